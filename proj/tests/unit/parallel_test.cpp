// Copyright 2026 The tensorfm Authors
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

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "tensorfm/parallel.hpp"

namespace tfm {
namespace {

TEST(ParallelFor, CoversEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(10000);
  parallel_for(hits.size(), 4, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) hits[i]++;
  });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, RethrowsWorkerErrors) {
  EXPECT_THROW(parallel_for(4096, 4, [](std::size_t b, std::size_t) {
                 if (b > 0) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(DefaultThreads, HonoursEnvironment) {
  ::setenv("TENSORFM_THREADS", "3", 1);
  EXPECT_EQ(default_threads(), 3u);
  ::setenv("TENSORFM_THREADS", "junk", 1);
  EXPECT_GE(default_threads(), 1u);
  ::unsetenv("TENSORFM_THREADS");
}

}  // namespace
}  // namespace tfm
