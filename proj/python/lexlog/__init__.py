"""Python access to the lexlog compiler and reasoner.

Each function returns the decoded response body and raises LexlogError for
non-200 results.
"""

import json

from . import _lexlog

IR_SCHEMA = _lexlog.IR_SCHEMA
OUT_SCHEMA = _lexlog.OUT_SCHEMA


class LexlogError(Exception):
    def __init__(self, status, body):
        super().__init__(body.get("error") or f"request failed with status {status}")
        self.status = status
        self.body = body

    @property
    def diagnostics(self):
        return self.body.get("diagnostics", [])


def _call(fn, request):
    status, text = fn(json.dumps(request))
    body = json.loads(text)
    if status != 200:
        raise LexlogError(status, body)
    return body


def _source_request(source, unless_naf, **extra):
    req = {"source": source, "unless-naf": unless_naf}
    req.update({k: v for k, v in extra.items() if v is not None})
    return req


def compile(source, *, origin="<input>", unless_naf=False):
    return _call(_lexlog.compile, _source_request(source, unless_naf, origin=origin))


def query(source, query, *, scenario=None, unless_naf=False):
    return _call(_lexlog.query, _source_request(source, unless_naf, scenario=scenario, query=query))


def explain(source, query, *, scenario=None, answer_index=0, unless_naf=False):
    req = _source_request(source, unless_naf, scenario=scenario, query=query)
    req["answer-index"] = answer_index
    return _call(_lexlog.explain, req)


def render(ir):
    return _call(_lexlog.render, {"ir": ir})


def check(source, *, unless_naf=False):
    return _call(_lexlog.check, _source_request(source, unless_naf))


__all__ = ["IR_SCHEMA", "OUT_SCHEMA", "LexlogError", "compile", "query", "explain", "render", "check"]
