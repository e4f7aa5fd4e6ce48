// SPDX-License-Identifier: Apache-2.0
//
// riscov: coverage and energy-efficiency analysis of RIS-assisted mmWave networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Runs the full validation twice with default settings and prints one
// PASS/FAIL line per acceptance criterion. Criterion 9 compares the two
// reports byte for byte.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <riscov/riscov.hpp>

int main()
{
    using clock = std::chrono::steady_clock;
    const riscov::NetworkConfig cfg;
    const riscov::ValidationOptions opts;

    const auto t0 = clock::now();
    const riscov::ValidationReport first = riscov::run_validation(cfg, opts);
    const auto t1 = clock::now();
    const riscov::ValidationReport second = riscov::run_validation(cfg, opts);
    const auto t2 = clock::now();

    const std::string a = first.to_text();
    const std::string b = second.to_text();
    std::cout << a << '\n';

    bool all = true;
    for (int c = 1; c <= 8; ++c)
    {
        const riscov::CheckResult* r = first.find(c);
        const bool ok = r != nullptr && r->passed && !r->skipped;
        all = all && ok;
        std::printf("criterion %d: %s %s\n", c, ok ? "PASS" : "FAIL", r ? r->name.c_str() : "(missing)");
    }
    const bool same = a == b;
    all = all && same;
    std::printf("criterion 9: %s two validate runs with seed %llu produce byte-identical reports (%zu bytes)\n",
                same ? "PASS" : "FAIL", static_cast<unsigned long long>(opts.seed), a.size());

    const double s1 = std::chrono::duration<double>(t1 - t0).count();
    const double s2 = std::chrono::duration<double>(t2 - t1).count();
    std::printf("validate wall time: %.1f s, %.1f s\n", s1, s2);
    std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}
