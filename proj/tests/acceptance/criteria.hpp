// Copyright 2026 The AOGrasp Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Shared plumbing for the acceptance binary: every criterion reports a single
// PASS/FAIL line with the measured values that decided it.

#ifndef AOGRASP_TESTS_ACCEPTANCE_CRITERIA_HPP_
#define AOGRASP_TESTS_ACCEPTANCE_CRITERIA_HPP_

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace acceptance {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

std::vector<Criterion> core_criteria();      // 1-7
std::vector<Criterion> pipeline_criteria();  // 8-10

template <typename... Args>
std::string format(const char* fmt, Args... args) {
  char buf[1024];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

}  // namespace acceptance

#endif  // AOGRASP_TESTS_ACCEPTANCE_CRITERIA_HPP_
