// Copyright 2026 The extremap Authors
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

#include <atomic>
#include <cstdlib>
#include <string>

#include "extremap/kernels.hpp"

namespace extremap::kernels {

namespace {

constexpr Table kScalar{Isa::Scalar, detail::dotu_scalar, detail::dotc_scalar,
                        detail::dist_sq_scalar, detail::blaschke_scalar};

#if defined(EXTREMAP_HAVE_AVX2)
constexpr Table kAvx2{Isa::Avx2, detail::dotu_avx2, detail::dotc_avx2,
                      detail::dist_sq_avx2, detail::blaschke_avx2};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

#if defined(EXTREMAP_HAVE_NEON)
constexpr Table kNeon{Isa::Neon, detail::dotu_neon, detail::dotc_neon,
                      detail::dist_sq_neon, detail::blaschke_neon};
#endif

const Table* widest() {
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (const Table* t = table_for(isa)) return t;
  }
  return &kScalar;
}

const Table* initial() {
  if (const char* env = std::getenv("EXTREMAP_ISA")) {
    const std::string want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (want == to_string(isa)) {
        if (const Table* t = table_for(isa)) return t;
      }
    }
  }
  return widest();
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{initial()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

const Table& scalar_table() { return kScalar; }

const Table* table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return &kScalar;
    case Isa::Avx2:
#if defined(EXTREMAP_HAVE_AVX2)
      if (cpu_has_avx2()) return &kAvx2;
#endif
      return nullptr;
    case Isa::Neon:
#if defined(EXTREMAP_HAVE_NEON)
      return &kNeon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (table_for(isa)) out.push_back(isa);
  }
  return out;
}

const Table& active() { return *current().load(std::memory_order_acquire); }

bool select(Isa isa) {
  const Table* t = table_for(isa);
  if (!t) return false;
  current().store(t, std::memory_order_release);
  return true;
}

}  // namespace extremap::kernels
