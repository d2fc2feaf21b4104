/**************************************************************************
 * errors.hpp
 *
 * Copyright 2026 The colrep Authors
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
 **************************************************************************/

#pragma once

#include <stdexcept>
#include <string>

namespace colrep {

/// Base class for every error raised by the library. `kind()` is a short
/// stable tag used by the CLI for machine-parsable error lines.
class error : public std::runtime_error {
public:
  error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define COLREP_DEFINE_ERROR(name, tag)                                        \
  class name : public error {                                                 \
  public:                                                                     \
    explicit name(const std::string& what) : error(tag, what) {}              \
  }

COLREP_DEFINE_ERROR(spec_mismatch_error, "spec-mismatch");
COLREP_DEFINE_ERROR(division_by_zero_error, "division-by-zero");
COLREP_DEFINE_ERROR(domain_error, "domain");
COLREP_DEFINE_ERROR(rank_deficiency_error, "rank-deficiency");
COLREP_DEFINE_ERROR(degenerate_code_error, "degenerate-code");
COLREP_DEFINE_ERROR(index_error, "index");
COLREP_DEFINE_ERROR(precondition_error, "precondition");
COLREP_DEFINE_ERROR(correspondence_error, "correspondence");
COLREP_DEFINE_ERROR(reduction_error, "reduction");
COLREP_DEFINE_ERROR(normalization_error, "normalization");
COLREP_DEFINE_ERROR(dimension_error, "dimension");
COLREP_DEFINE_ERROR(config_error, "config");
COLREP_DEFINE_ERROR(parse_error, "parse");

#undef COLREP_DEFINE_ERROR

}  // namespace colrep
