/*
 * Copyright 2026 The hnsf Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HNSF_ERRORS_HPP_
#define HNSF_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hnsf {

/// Invalid configuration value. `field()` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Raised when (alpha, gamma, theta) or (alpha, s) fall outside the proven
/// regime and no override was given.
class RegularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Non-finite state or runaway growth during time stepping.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double t, double h1_norm, const std::string& reason)
      : std::runtime_error(reason), t_(t), h1_norm_(h1_norm) {}

  double time() const noexcept { return t_; }
  double h1_norm() const noexcept { return h1_norm_; }

 private:
  double t_;
  double h1_norm_;
};

}  // namespace hnsf

#endif  // HNSF_ERRORS_HPP_
