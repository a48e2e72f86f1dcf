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

#include "swaptest/ensemble.h"

#include <omp.h>

namespace swaptest {

// Everything in the ensemble helper is inline; this unit pins the OpenMP
// runtime to the core library so dependents link it transitively.
int ensemble_thread_count() { return omp_get_max_threads(); }

}  // namespace swaptest
