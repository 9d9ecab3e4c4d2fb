#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace lexlog::testing {

// Explanation of the single tax121 answer under scenario "one", one entry per
// output line with indentation removed.
inline const std::vector<std::string>& expected_tax_transcript() {
  static const std::vector<std::string> lines = {
      "It is the case that: gross income of the taxpayer excludes gain from the sale of the house at "
      "2022-6-20T0:0:0.0 as proved by KB Text",
      "because",
      "It is the case that: subsection (a) applies to the sale of the house by the taxpayer at 2022-6-20T0:0:0.0 as "
      "proved by KB Text",
      "because",
      "It is the case that: the taxpayer meets the ownership requirements of subsection (a) with respect to the sale "
      "of the house at 2022-6-20T0:0:0.0 as proved by KB Text",
      "because",
      "It is the case that: the sale of the house occurs at 2022-6-20T0:0:0.0 as proved by hypothesis in scenario",
      "It is the case that: the given period of 5 years ends at 2022-6-20T0:0:0.0 as proved by hypothesis in scenario",
      "It is the case that: the house has been owned by the taxpayer for periods aggregating 2 years or more during "
      "the given period as proved by KB Text",
      "because",
      "It is the case that: first set of periods of the taxpayer owing the house aggregates to 2 of years as proved "
      "by hypothesis in scenario",
      "It is the case that: first set of periods is contained in the given period as proved by hypothesis in "
      "scenario",
      "It is the case that: the taxpayer meets the use requirements of subsection (a) with respect to the sale of the "
      "house at 2022-6-20T0:0:0.0 as proved by KB Text",
      "because",
      "It is the case that: the house has been used by the taxpayer as principal residence for periods aggregating 2 "
      "years or more during the given period as proved by KB Text",
      "because",
      "It is the case that: second set of periods of the taxpayer using the house as principal residence aggregates "
      "to 3 of years as proved by hypothesis in scenario",
      "It is the case that: second set of periods is contained in the given period as proved by hypothesis in "
      "scenario",
      "It cannot be proved for a certain case that: subsection (a) shall not apply to the sale of the house by the "
      "taxpayer ~ KB Text",
      "because",
      "It cannot be proved for a certain case that: \"an exchange\" of \"a property\" occurs at \"a date\" ~ KB Text",
      "It cannot be proved for a certain case that: the sale of the house occurs at \"a date\" ~ KB Text",
  };
  return lines;
}

// Lines of text with leading whitespace removed, sorted.
inline std::vector<std::string> line_multiset(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    auto start = line.find_first_not_of(' ');
    if (start == std::string::npos) continue;
    out.push_back(line.substr(start));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace lexlog::testing
