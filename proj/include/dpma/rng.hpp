// SPDX-License-Identifier: Apache-2.0
//
// dpma: dual-polarized movable-antenna AirComp optimization library
// Copyright (C) 2026 The dpma authors
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

#ifndef DPMA_RNG_HPP
#define DPMA_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>

namespace dpma
{
    // Counter-based Philox4x32-10 generator (Salmon et al., SC'11). The key is
    // derived from a master seed plus a sub-stream path, and every output block
    // is a pure function of (key, counter), so streams are reproducible across
    // runs and platforms and can be addressed at any position.
    class Philox4x32
    {
    public:
        using Block = std::array<std::uint32_t, 4>;
        using Key = std::array<std::uint32_t, 2>;

        static Block generate(const Key &key, const Block &counter);
    };

    // Well-known sub-stream identifiers. Independent draws for geometry,
    // angles, and gains keep paired experiments aligned.
    enum class Stream : std::uint64_t
    {
        Geometry = 1,
        Angles = 2,
        Gains = 3,
        SingleCell = 4,
        MonteCarlo = 5,
        Randomization = 6,
        Demo = 7,
        Test = 99,
    };

    class RngStream
    {
    public:
        RngStream(std::uint64_t master_seed, Stream stream, std::uint64_t a = 0, std::uint64_t b = 0);

        std::uint64_t next_u64();
        // Uniform on [0, 1).
        double uniform();
        double uniform(double lo, double hi);
        // Standard normal (Box-Muller, both outputs used).
        double normal();
        // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
        std::complex<double> complex_normal(double variance = 1.0);

        // Jump to an absolute block position in the stream.
        void seek(std::uint64_t block);
        std::uint64_t position() const { return block_; }

    private:
        void refill();

        Philox4x32::Key key_{};
        std::uint64_t block_ = 0;
        Philox4x32::Block buffer_{};
        int used_ = 4;
        bool has_spare_ = false;
        double spare_ = 0.0;
    };

    // SplitMix64 finalizer, used for key derivation.
    std::uint64_t mix64(std::uint64_t x);
} // namespace dpma

#endif
