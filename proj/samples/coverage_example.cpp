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

// Coverage at a few thresholds with and without RISs, then a short Monte
// Carlo cross-check at 0 dB.
//
//   coverage_example [config.json]

#include <cstdio>

#include <riscov/riscov.hpp>

int main(int argc, char** argv)
{
    using namespace riscov;
    const NetworkConfig cfg = argc > 1 ? load_config_file(argv[1]) : NetworkConfig{};

    const CoverageEngine engine(cfg);
    std::printf("p_aBS %.4f  p_aR %.4f\n", engine.p_active_bs(), engine.p_active_ris());
    std::printf("%8s %10s %10s\n", "T [dB]", "with RIS", "direct");
    for (double db : {-10.0, -5.0, 0.0, 5.0, 10.0, 20.0})
    {
        const double t = db_to_linear(db);
        std::printf("%8.1f %10.4f %10.4f\n", db, engine.coverage(t).total, engine.coverage_direct(t).total);
    }

    const EfficiencyResult e = efficiency(1.0, engine);
    std::printf("ASE %.4e bit/s/Hz/m^2  EE %.4e bit/s/Hz/J\n", e.ase, e.ee);

    const auto samples = simulate(cfg, 2000, 7);
    const CoverageResult mc = coverage_from_samples(samples, 1.0);
    std::printf("Monte Carlo at 0 dB: %.4f  [%.4f, %.4f]\n", mc.total, mc.ci_low, mc.ci_high);
    return 0;
}
