/*
 * Copyright 2026 The hybrid-rrt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace hrrt {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// No split satisfies the power cap.
class NoFeasibleSolution : public Error {
 public:
  using Error::Error;
};

/// A seed reaches no cell other than its own, so its area is undefined.
class DegenerateArea : public Error {
 public:
  using Error::Error;
};

class MapLoadError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// The simulated architecture stopped making progress with work pending.
class DeadlockDetected : public Error {
 public:
  using Error::Error;
};

/// A benchmark plan cannot be run, e.g. the power cap admits no split.
class InfeasiblePlan : public Error {
 public:
  using Error::Error;
};

}  // namespace hrrt
