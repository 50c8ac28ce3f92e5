#pragma once

#include <string>

#include "worldbench/search.hpp"

namespace wb {

// Suite file: blocks introduced by a `world` line, '#' comments.
//   world <relative-path> | world builtin:<name>
//   train <n>
//   eval <n>
//   require <value> | require <g>:<b>
//   seed <n>
// Optional file-level lines before the first block:
//   policy_cap <n>
//   step_budget <n>
// World paths resolve against the suite file's directory.
TestSuite parse_suite_file(const std::string& path);

}  // namespace wb
