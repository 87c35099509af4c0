// Copyright 2026 The qheat Authors
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

#include <functional>

namespace qheat {

/// Worker count from QHEAT_THREADS, else the hardware concurrency (at least 1).
int thread_count();

/// Runs body(i) for i in [0, count) over contiguous index blocks. Each index
/// is processed exactly once, so results written per index do not depend on
/// the thread count. The first exception thrown by any block is rethrown.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace qheat
