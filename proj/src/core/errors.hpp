// Copyright 2026 The qtrange developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QTRANGE_CORE_ERRORS_HPP
#define QTRANGE_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qtrange {

// A parameter lies outside its mathematical domain (negative photon number,
// transmissivity outside [0,1], non-physical covariance, ...).
class domain_error : public std::invalid_argument {
 public:
  explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical guarantee cannot be met (e.g. a Fock truncation discards too
// much trace, or an eigenvalue problem degenerates).
class precision_error : public std::runtime_error {
 public:
  explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// A configurable resource cap was exceeded (e.g. sweep row count).
class limit_error : public std::runtime_error {
 public:
  explicit limit_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qtrange

#endif
