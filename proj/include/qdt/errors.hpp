// Copyright 2026 The QDT Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception hierarchy shared by every qdt module.
 */
#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace qdt {

/// Base of all qdt errors. `kind()` is the stable machine-readable name.
class Error : public std::runtime_error {
  public:
    Error(std::string kind, const std::string &what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    [[nodiscard]] const std::string &kind() const noexcept { return kind_; }

  private:
    std::string kind_;
};

#define QDT_DEFINE_ERROR(Name)                                                 \
    class Name : public Error {                                                \
      public:                                                                  \
        explicit Name(const std::string &what) : Error(#Name, what) {}         \
    }

QDT_DEFINE_ERROR(InvalidScenario);
QDT_DEFINE_ERROR(SupportViolation);
QDT_DEFINE_ERROR(IndexError);
QDT_DEFINE_ERROR(DimensionError);
QDT_DEFINE_ERROR(ZeroNormError);
QDT_DEFINE_ERROR(NumericalError);
QDT_DEFINE_ERROR(StateError);
QDT_DEFINE_ERROR(UsageError);

#undef QDT_DEFINE_ERROR

/// Raised when a normalization condition fails; carries every residual that
/// was checked, keyed by condition name.
class NormalizationError : public Error {
  public:
    NormalizationError(const std::string &what,
                       std::map<std::string, double> residuals = {})
        : Error("NormalizationError", what), residuals_(std::move(residuals)) {}
    [[nodiscard]] const std::map<std::string, double> &residuals() const {
        return residuals_;
    }

  private:
    std::map<std::string, double> residuals_;
};

/// Malformed scenario text. Line and column are 1-based.
class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::size_t line, std::size_t column)
        : Error("ParseError", what + " at line " + std::to_string(line) +
                                  ", column " + std::to_string(column)),
          line_(line), column_(column) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace qdt
