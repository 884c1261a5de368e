// Copyright 2026 The SpeckleNet Authors. All Rights Reserved.
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

#ifndef SPECKLENET_ERROR_HPP_
#define SPECKLENET_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace specklenet {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor shapes disagree with what an operation requires.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A numeric precondition failed (non-finite gradient, malformed one-hot, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// An image file could not be decoded.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// A dataset tree or split request is unusable.
class DatasetError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A model was asked to run on data preprocessed for a different laser.
class LaserMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace specklenet

#endif  // SPECKLENET_ERROR_HPP_
