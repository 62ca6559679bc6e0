/* Copyright 2026 The skelimg Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SKELIMG_ERRORS_HPP_
#define SKELIMG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace skelimg {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Header or cell layout does not match the expected CSV/JSON schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Frame column is not strictly increasing from zero.
class OrderingError : public Error {
 public:
  using Error::Error;
};

// Coordinate outside the accepted ingestion range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Argument or data violates a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace skelimg

#endif  // SKELIMG_ERRORS_HPP_
