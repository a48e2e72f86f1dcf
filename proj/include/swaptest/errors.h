// Copyright 2026 The swaptest Authors
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

#include <stdexcept>
#include <string>

namespace swaptest {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A parameter is non-finite or outside its domain.
class InvalidParameter : public Error {
   public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
   public:
    using Error::Error;
};

/// The output state carries no power at all.
class DegenerateState : public Error {
   public:
    using Error::Error;
};

/// Corrected counts are all zero after dark-count subtraction.
class InsufficientStatistics : public Error {
   public:
    using Error::Error;
};

/// A phase-power sweep does not contain enough fringe to pin the model.
class UnderdeterminedFit : public Error {
   public:
    using Error::Error;
};

class NonConvergence : public Error {
   public:
    using Error::Error;
};

/// The requested phase needs more electrical power than allowed.
class UnreachablePhase : public Error {
   public:
    using Error::Error;
};

/// Bad config file, flag, or dataset. Maps to CLI exit code 2.
class ConfigError : public Error {
   public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
   public:
    using Error::Error;
};

}  // namespace swaptest
