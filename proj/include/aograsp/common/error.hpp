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

#ifndef AOGRASP_COMMON_ERROR_HPP_
#define AOGRASP_COMMON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace aograsp {

// Base class for every error raised by the toolkit. Callers that only need to
// report failures can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aograsp

#endif  // AOGRASP_COMMON_ERROR_HPP_
