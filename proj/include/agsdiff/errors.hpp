// Copyright 2026 The agsdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace agsdiff {

// Base of every error thrown by the library. Content differences between
// GUI states are never errors; they are reported as data.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An attribute set contains the same key twice.
class WellFormednessViolation : public Error {
 public:
  using Error::Error;
};

// Malformed AGS JSON. `line` and `column` are 1-based; 0 when the error is
// structural (schema) rather than lexical.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class RuleParseError : public Error {
 public:
  RuleParseError(const std::string& what, std::size_t line, std::string token)
      : Error(what), line_(line), token_(std::move(token)) {}

  std::size_t line() const { return line_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t line_;
  std::string token_;
};

class SnapshotParseError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class EmptyKeyConfig : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class StoreIOError : public Error {
 public:
  using Error::Error;
};

class CorruptGoldenMaster : public Error {
 public:
  using Error::Error;
};

class NameCollision : public Error {
 public:
  using Error::Error;
};

class UnknownStep : public Error {
 public:
  using Error::Error;
};

class UnknownElement : public Error {
 public:
  using Error::Error;
};

class UnknownTarget : public Error {
 public:
  using Error::Error;
};

// The suite writer lock is held by another writer.
class SuiteLocked : public Error {
 public:
  using Error::Error;
};

}  // namespace agsdiff
