// Copyright 2026 The Quell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
// ANY KIND, either express or implied. See the License for the specific
// language governing permissions and limitations under the License.

// Compares the serial reference simulator against the OpenMP one on a set of
// representative workloads: wall time, speedup, and count-table identity
// (per-shot seeding makes the two policies bit-identical by construction;
// this harness keeps that property honest).

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "quell/device.hpp"
#include "quell/generators.hpp"
#include "quell/pipeline.hpp"
#include "quell/schedule.hpp"
#include "quell/sim.hpp"
#include "quell/transpile.hpp"

using namespace quell;

namespace {

double run_policy(const ScheduledCircuit& sc, const DeviceModel& dev, std::int64_t shots,
                  ExecPolicy policy, Distribution& out) {
    SimOptions so;
    so.shots = shots;
    so.seed = 99;
    so.policy = policy;
    const auto t0 = std::chrono::steady_clock::now();
    out = simulate(sc, dev, so);
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const std::string device_path = argc > 1 ? argv[1] : std::string(QUELL_DATA_DIR) + "/hex16.json";
    const std::int64_t shots = argc > 2 ? std::atoll(argv[2]) : 8192;
    const DeviceModel dev = DeviceModel::load(device_path);

#ifdef _OPENMP
    std::printf("device %s, %lld shots, %d OpenMP threads\n", dev.name.c_str(),
                static_cast<long long>(shots), omp_get_max_threads());
#else
    std::printf("device %s, %lld shots, OpenMP disabled at build time\n", dev.name.c_str(),
                static_cast<long long>(shots));
#endif
    std::printf("%-14s %7s %12s %12s %9s %6s\n", "workload", "qubits", "serial ms", "openmp ms",
                "speedup", "match");

    struct Case {
        std::string name;
        Circuit logical;
    };
    std::vector<Case> cases;
    cases.push_back({"bv n=8", gen_bv(8)});
    cases.push_back({"bv n=12", gen_bv(12)});
    cases.push_back({"grover 11010", gen_grover5("11010", 2)});
    cases.push_back({"qft n=6", gen_qft(6, "101010")});
    cases.push_back({"qec-rep X2", gen_repetition5(2)});
    cases.push_back({"qv n=5 k=0", gen_qv(5, 1, 7).front()});

    bool all_match = true;
    for (const auto& c : cases) {
        const Circuit native = reduce(to_native(c.logical));
        const Layout layout = select_layout(native, dev);
        const RouteResult routed = route(native, dev, layout);
        const ScheduledCircuit sc = schedule_asap(routed.circuit, dev);

        Distribution serial, parallel;
        const double t_serial = run_policy(sc, dev, shots, ExecPolicy::Serial, serial);
        const double t_openmp = run_policy(sc, dev, shots, ExecPolicy::OpenMP, parallel);
        const bool match = serial.counts == parallel.counts;
        all_match = all_match && match;
        std::printf("%-14s %7d %12.1f %12.1f %8.2fx %6s\n", c.name.c_str(), c.logical.num_qubits,
                    t_serial, t_openmp, t_serial / t_openmp, match ? "yes" : "NO");
    }

    if (!all_match) {
        std::printf("policy mismatch detected\n");
        return 1;
    }
    return 0;
}
