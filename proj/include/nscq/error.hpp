// Copyright 2026 The nscq Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace nscq {

/// Broad failure classes. The C API maps each one onto an error code.
enum class ErrorKind {
    Domain,      // argument outside its mathematical domain
    Structural,  // malformed indices, sizes, or distributions
    Capacity,    // problem exceeds a backend limit
    Encoding,    // value cannot be represented in the chosen register width
    Parse,       // malformed instance file
    Io,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

class DomainError : public Error {
  public:
    explicit DomainError(const std::string &what) : Error(ErrorKind::Domain, what) {}
};

class StructuralError : public Error {
  public:
    explicit StructuralError(const std::string &what)
        : Error(ErrorKind::Structural, what) {}
};

class CapacityError : public Error {
  public:
    explicit CapacityError(const std::string &what)
        : Error(ErrorKind::Capacity, what) {}
};

class EncodingError : public Error {
  public:
    explicit EncodingError(const std::string &what)
        : Error(ErrorKind::Encoding, what) {}
};

class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::size_t line, std::size_t column)
        : Error(ErrorKind::Parse, what), line_(line), column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

class IoError : public Error {
  public:
    explicit IoError(const std::string &what) : Error(ErrorKind::Io, what) {}
};

} // namespace nscq
