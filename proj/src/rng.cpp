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

#include "dpma/rng.hpp"

#include <cmath>

namespace dpma
{
    namespace
    {
        constexpr std::uint32_t kMul0 = 0xD2511F53u;
        constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
        constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
        constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

        inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo)
        {
            const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
            hi = static_cast<std::uint32_t>(p >> 32);
            lo = static_cast<std::uint32_t>(p);
        }
    } // namespace

    Philox4x32::Block Philox4x32::generate(const Key &key, const Block &counter)
    {
        Block x = counter;
        Key k = key;
        for (int round = 0; round < 10; ++round)
        {
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(kMul0, x[0], hi0, lo0);
            mulhilo(kMul1, x[2], hi1, lo1);
            x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        return x;
    }

    std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    RngStream::RngStream(std::uint64_t master_seed, Stream stream, std::uint64_t a, std::uint64_t b)
    {
        std::uint64_t h = mix64(master_seed);
        h = mix64(h ^ static_cast<std::uint64_t>(stream));
        h = mix64(h ^ a);
        h = mix64(h ^ (b + 0x632BE59BD9B4E019ull));
        key_ = {static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    }

    void RngStream::refill()
    {
        const Philox4x32::Block ctr = {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32), 0u, 0u};
        buffer_ = Philox4x32::generate(key_, ctr);
        ++block_;
        used_ = 0;
    }

    void RngStream::seek(std::uint64_t block)
    {
        block_ = block;
        used_ = 4;
        has_spare_ = false;
    }

    std::uint64_t RngStream::next_u64()
    {
        if (used_ > 2)
            refill();
        const std::uint64_t v = (static_cast<std::uint64_t>(buffer_[used_]) << 32) | buffer_[used_ + 1];
        used_ += 2;
        return v;
    }

    double RngStream::uniform()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double RngStream::uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    double RngStream::normal()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    std::complex<double> RngStream::complex_normal(double variance)
    {
        const double s = std::sqrt(0.5 * variance);
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }
} // namespace dpma
