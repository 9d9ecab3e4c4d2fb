#pragma once

#include <string>
#include <vector>

#include "lexlog/compiler.hpp"

namespace lexlog::testing {

std::string corpus_path(const std::string& name);
std::string read_corpus(const std::string& name);
// Every *.le file in the corpus directory, sorted.
std::vector<std::string> corpus_files();

// Compiles a corpus document; throws with the diagnostics on failure.
KnowledgeBase load_corpus(const std::string& name, const CompileOptions& options = {});

}  // namespace lexlog::testing

namespace lexlog::testing {

// Adds `shift` spaces to every line that already starts with a space.
std::string shift_indentation(const std::string& source, int shift);

// Runs `runs` random uniform shifts over every corpus document under both
// unless encodings; returns one message per shift that changed the KB.
std::vector<std::string> indentation_perturbation_failures(int runs, unsigned seed);

}  // namespace lexlog::testing
