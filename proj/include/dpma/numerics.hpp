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

#ifndef DPMA_NUMERICS_HPP
#define DPMA_NUMERICS_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace dpma
{
    using cd = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using RVector = Eigen::VectorXd;

    inline constexpr cd kJ{0.0, 1.0};
    inline constexpr double kPi = 3.14159265358979323846;

    class NumericsError : public std::runtime_error
    {
    public:
        explicit NumericsError(const std::string &what, double diagnostic = 0.0)
            : std::runtime_error(what), diagnostic_(diagnostic) {}

        // Residual or condition estimate, depending on the failing routine.
        double diagnostic() const { return diagnostic_; }

    private:
        double diagnostic_;
    };

    // Square complex matrix with A == A^H. Construction accepts inputs whose
    // anti-Hermitian part is at most `tol` entrywise and symmetrizes them.
    class HermitianMatrix
    {
    public:
        explicit HermitianMatrix(const CMatrix &a, double tol = 1e-12);

        static HermitianMatrix identity(Eigen::Index n);

        Eigen::Index order() const { return a_.rows(); }
        const CMatrix &matrix() const { return a_; }
        cd operator()(Eigen::Index i, Eigen::Index j) const { return a_(i, j); }

    private:
        CMatrix a_;
    };

    struct EigenDecomposition
    {
        RVector values;  // ascending
        CMatrix vectors; // unitary, columns are eigenvectors
    };

    EigenDecomposition hermitian_eig(const HermitianMatrix &a);

    // Spectrum element of largest modulus; ties go to the larger real part.
    cd max_eig_general(const CMatrix &a);

    CMatrix kron(const CMatrix &a, const CMatrix &b);

    // Column-major stacking.
    CVector vec(const CMatrix &a);
    CMatrix unvec(const CVector &v, Eigen::Index rows, Eigen::Index cols);

    // Solves A x = b for Hermitian positive definite A.
    CVector solve_hpd(const HermitianMatrix &a, const CVector &b);

    // Largest singular value.
    double spectral_norm(const CMatrix &a);

    // Projection onto the PSD cone by eigenvalue clipping.
    CMatrix project_psd(const HermitianMatrix &a);

    // exp(j * angle(z)) with angle(0) := 0.
    inline cd unit_phase(cd z)
    {
        const double r = std::abs(z);
        return r > 0.0 ? z / r : cd{1.0, 0.0};
    }

    bool all_finite(const CMatrix &a);

    // Non-fatal diagnostics. The default handler writes to stderr.
    using WarningHandler = std::function<void(const std::string &)>;
    WarningHandler set_warning_handler(WarningHandler handler);
    void warn(const std::string &message);
} // namespace dpma

#endif
