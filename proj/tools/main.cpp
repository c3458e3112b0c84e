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

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "cli_common.hpp"
#include "tensorfm/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

int fail(int code, const char* kind, const std::exception& e) {
  std::cerr << "tensorfm: " << kind << ": " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorization machines with CP/Tucker higher-order interactions", "tensorfm"};
  app.require_subcommand(1);
  tfm::cli::add_prep(app);
  tfm::cli::add_synth(app);
  tfm::cli::add_train(app);
  tfm::cli::add_eval(app);
  tfm::cli::add_grid(app);
  tfm::cli::add_bench_flops(app);
  tfm::cli::add_bench_latency(app);
  tfm::cli::add_interpret(app);
  app.footer("Set TENSORFM_THREADS to limit the number of scoring threads.\n"
             "Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric failure.");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = tfm::cli::expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const tfm::cli::UsageError& e) {
    return fail(kExitUsage, "usage error", e);
  } catch (const tfm::ConfigError& e) {
    return fail(kExitUsage, "usage error", e);
  } catch (const tfm::CapacityError& e) {
    return fail(kExitUsage, "usage error", e);
  } catch (const tfm::NumericError& e) {
    return fail(kExitNumeric, "numeric failure", e);
  } catch (const tfm::Error& e) {
    return fail(kExitData, "data error", e);
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(kExitData, "data error", e);
  }
  return kExitOk;
}
