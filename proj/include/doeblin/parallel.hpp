// Copyright 2026 The doeblin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace doeblin {

// Worker count for data-parallel loops: DOEBLIN_THREADS when set, else
// hardware concurrency, always at least 1.
unsigned worker_count();

// Runs body(begin, end) over [0, n) split into fixed-size chunks claimed
// from an atomic counter. Chunk boundaries depend only on (n, chunk_size),
// so callers that write to per-index slots get results independent of the
// number of workers. Exceptions from workers are rethrown in the caller.
void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace doeblin
