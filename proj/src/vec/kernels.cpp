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

#include "doeblin/vec/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace doeblin::vec {

// Defined in kernels_avx2.cpp; nullptr when compiled out.
const Kernels* avx2_kernels_impl();

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Kernels& select() {
  const Kernels* avx2 = avx2_kernels();
  if (const char* want = std::getenv("DOEBLIN_ISA")) {
    const std::string name(want);
    if (name == "scalar") return scalar_kernels();
    if (name == "avx2") {
      if (!avx2) throw std::runtime_error("DOEBLIN_ISA=avx2 but AVX2 is unavailable");
      return *avx2;
    }
    throw std::runtime_error("DOEBLIN_ISA must be 'scalar' or 'avx2', got '" + name + "'");
  }
  return avx2 ? *avx2 : scalar_kernels();
}

}  // namespace

const Kernels* avx2_kernels() {
  static const Kernels* k = cpu_has_avx2() ? avx2_kernels_impl() : nullptr;
  return k;
}

const Kernels& active() {
  static const Kernels& k = select();
  return k;
}

}  // namespace doeblin::vec
