/*
   Copyright 2026 The dstc-vlc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace dstc {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class SizeLimitError : public Error {
public:
    using Error::Error;
};

class ConstructionUnavailableError : public Error {
public:
    using Error::Error;
};

/// A dimming design violates one of its feasibility inequalities.
/// `what()` names the violated inequality.
class ConstraintViolationError : public Error {
public:
    using Error::Error;
};

class EqualizationFailureError : public Error {
public:
    using Error::Error;
};

/// The known training row cannot fix the scale of column `column()`.
class AmbiguityFailureError : public Error {
public:
    AmbiguityFailureError(const std::string& msg, std::size_t column)
        : Error(msg), column_(column) {}
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

class IdentifiabilityError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace dstc
