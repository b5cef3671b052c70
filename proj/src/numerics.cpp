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

#include "dpma/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <iostream>
#include <limits>

namespace dpma
{
    HermitianMatrix::HermitianMatrix(const CMatrix &a, double tol)
    {
        if (a.rows() != a.cols() || a.rows() < 1)
            throw NumericsError("HermitianMatrix: input must be square and non-empty");
        if (!all_finite(a))
            throw NumericsError("HermitianMatrix: non-finite entry");
        const double skew = (a - a.adjoint()).cwiseAbs().maxCoeff();
        const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
        if (skew > tol * scale)
            throw NumericsError("HermitianMatrix: input is not Hermitian", skew);
        a_ = 0.5 * (a + a.adjoint());
        for (Eigen::Index i = 0; i < a_.rows(); ++i)
            a_(i, i) = cd(a_(i, i).real(), 0.0);
    }

    HermitianMatrix HermitianMatrix::identity(Eigen::Index n)
    {
        return HermitianMatrix(CMatrix::Identity(n, n));
    }

    EigenDecomposition hermitian_eig(const HermitianMatrix &a)
    {
        // Eigen caps the tridiagonal QR at 30 sweeps per eigenvalue
        Eigen::SelfAdjointEigenSolver<CMatrix> solver;
        solver.compute(a.matrix(), Eigen::ComputeEigenvectors);
        if (solver.info() != Eigen::Success)
            throw NumericsError("hermitian_eig: iteration cap reached", std::numeric_limits<double>::infinity());

        EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
        const double norm = std::max(a.matrix().norm(), std::numeric_limits<double>::min());
        const double residual = (a.matrix() * out.vectors - out.vectors * out.values.asDiagonal()).norm();
        if (!(residual <= 1e-10 * norm + 1e-300))
            throw NumericsError("hermitian_eig: residual too large", residual / norm);
        return out;
    }

    cd max_eig_general(const CMatrix &a)
    {
        if (a.rows() != a.cols() || a.rows() < 1)
            throw NumericsError("max_eig_general: matrix must be square and non-empty");
        Eigen::ComplexEigenSolver<CMatrix> solver;
        solver.setMaxIterations(std::max<Eigen::Index>(30, 10 * a.rows() * a.rows()));
        solver.compute(a, false);
        if (solver.info() != Eigen::Success)
            throw NumericsError("max_eig_general: QR iteration did not converge");

        const CVector &ev = solver.eigenvalues();
        cd best = ev(0);
        for (Eigen::Index i = 1; i < ev.size(); ++i)
        {
            const double m = std::abs(ev(i)), mb = std::abs(best);
            // modulus ties are resolved with a relative slack so that conjugate
            // pairs from rounding do not flip the result
            const double slack = 1e-12 * std::max(1.0, mb);
            if (m > mb + slack || (std::abs(m - mb) <= slack && ev(i).real() > best.real()))
                best = ev(i);
        }
        return best;
    }

    CMatrix kron(const CMatrix &a, const CMatrix &b)
    {
        CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j)
                out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return out;
    }

    CVector vec(const CMatrix &a)
    {
        return Eigen::Map<const CVector>(a.data(), a.size());
    }

    CMatrix unvec(const CVector &v, Eigen::Index rows, Eigen::Index cols)
    {
        if (rows * cols != v.size())
            throw NumericsError("unvec: size mismatch");
        return Eigen::Map<const CMatrix>(v.data(), rows, cols);
    }

    CVector solve_hpd(const HermitianMatrix &a, const CVector &b)
    {
        if (b.size() != a.order())
            throw NumericsError("solve_hpd: dimension mismatch");
        const RVector ev = hermitian_eig(a).values;
        const double lo = ev(0), hi = ev(ev.size() - 1);
        if (!(hi > 0.0) || lo <= 1e-12 * hi)
        {
            const double cond = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
            throw NumericsError("solve_hpd: matrix is not numerically positive definite", cond);
        }
        Eigen::LLT<CMatrix> llt(a.matrix());
        if (llt.info() != Eigen::Success)
            throw NumericsError("solve_hpd: Cholesky factorization failed", hi / lo);
        CVector x = llt.solve(b);
        // one step of iterative refinement
        x += llt.solve(b - a.matrix() * x);
        return x;
    }

    double spectral_norm(const CMatrix &a)
    {
        if (a.size() == 0)
            return 0.0;
        Eigen::JacobiSVD<CMatrix> svd(a);
        return svd.singularValues()(0);
    }

    CMatrix project_psd(const HermitianMatrix &a)
    {
        const EigenDecomposition e = hermitian_eig(a);
        const RVector clipped = e.values.cwiseMax(0.0);
        return e.vectors * clipped.asDiagonal() * e.vectors.adjoint();
    }

    bool all_finite(const CMatrix &a)
    {
        return a.allFinite();
    }

    namespace
    {
        WarningHandler &warning_handler()
        {
            static WarningHandler handler = [](const std::string &m) { std::cerr << "warning: " << m << '\n'; };
            return handler;
        }
    } // namespace

    WarningHandler set_warning_handler(WarningHandler handler)
    {
        WarningHandler old = std::move(warning_handler());
        warning_handler() = std::move(handler);
        return old;
    }

    void warn(const std::string &message)
    {
        if (warning_handler())
            warning_handler()(message);
    }
} // namespace dpma
