// Copyright 2026 The Mixmatch Authors.
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

#ifndef MIXMATCH_ERRORS_H_
#define MIXMATCH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mixmatch {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user configuration (bad weights, missing files, bad flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A remote expert answered with something that violates the wire protocol.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// The remote expert could not be reached after all retries.
class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace mixmatch

#endif  // MIXMATCH_ERRORS_H_
