// Copyright 2026 The ensq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ensq/ensq.hpp"
#include "oracles.hpp"

namespace ensq {
namespace {

using oracle::kPi;
using namespace std::complex_literals;

Matrix diag4(Complex a, Complex b, Complex c, Complex d) {
    const Complex entries[] = {a, b, c, d};
    return Matrix::diagonal(entries);
}

TEST(Iswap, FullAngleIsIswap) {
    const Matrix expect{{1, 0, 0, 0}, {0, 0, 1i, 0}, {0, 1i, 0, 0}, {0, 0, 0, 1}};
    EXPECT_LE(iswap_theta(kPi).matrix().max_abs_diff(expect), 1e-15);
}

TEST(Iswap, ZeroAngleIsIdentity) { EXPECT_EQ(iswap_theta(0).matrix(), Matrix::identity(4)); }

TEST(Iswap, HalfAngleOnZeroOne) {
    const StateVector out = apply_gate(StateVector::basis(2, 0b01), iswap_theta(kPi / 2).matrix(), {0, 1});
    const double r = 1 / std::sqrt(2.0);
    EXPECT_LE(std::abs(out[0b01] - r), 1e-15);
    EXPECT_LE(std::abs(out[0b10] - 1i * r), 1e-15);
}

TEST(Iswap, SquareOfFullIswap) {
    const Matrix m = iswap_theta(kPi).matrix();
    EXPECT_LE((m * m).max_abs_diff(diag4(1, -1, -1, 1)), 1e-15);
}

TEST(Iswap, AngleIsReducedWithoutChangingTheMatrix) {
    for (double theta : {5.0, -7.5, 13.0, 4 * kPi}) {
        const auto g = iswap_theta(theta);
        EXPECT_LE(std::abs(g.params()[0]), 2 * kPi + 1e-12);
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        const Matrix expect{{1, 0, 0, 0}, {0, c, 1i * s, 0}, {0, 1i * s, c, 0}, {0, 0, 0, 1}};
        EXPECT_LE(g.matrix().max_abs_diff(expect), 1e-14);
    }
}

TEST(Iswap, CodeSpaceBlockIsXRotation) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> angle(-3 * kPi, 3 * kPi);
    for (int k = 0; k < 100; ++k) {
        const double theta = angle(rng);
        EXPECT_LE(iswap_theta(theta).matrix().block(1, 1, 2, 2).max_abs_diff(oracle::rx(-theta)), 1e-12);
    }
}

TEST(Phase, ZeroIsIdentity) { EXPECT_EQ(phase_theta_phi(0, 0).matrix(), Matrix::identity(4)); }

TEST(Phase, PiZero) { EXPECT_LE(phase_theta_phi(kPi, 0).matrix().max_abs_diff(diag4(1, -1i, 1i, 1)), 1e-15); }

TEST(Phase, CodeSpaceBlockIsPhasedZRotation) {
    const Matrix block = phase_theta_phi(kPi / 2, kPi / 3).matrix().block(1, 1, 2, 2);
    EXPECT_LE(block.max_abs_diff(oracle::rz(kPi / 2) * std::polar(1.0, kPi / 6)), 1e-15);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> angle(-3 * kPi, 3 * kPi);
    for (int k = 0; k < 100; ++k) {
        const double theta = angle(rng), phi = angle(rng);
        const Matrix b = phase_theta_phi(theta, phi).matrix().block(1, 1, 2, 2);
        EXPECT_LE(b.max_abs_diff(oracle::rz(theta) * std::polar(1.0, phi / 2)), 1e-12);
    }
}

TEST(Phase, AlwaysDiagonal) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> angle(-10, 10);
    for (int k = 0; k < 20; ++k) {
        const Matrix m = phase_theta_phi(angle(rng), angle(rng)).matrix();
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                if (r != c) {
                    EXPECT_EQ(m(r, c), Complex(0.0));
                }
    }
}

TEST(Cswap, ControlOffLeavesPair) {
    const StateVector out = apply_gate(StateVector::basis(3, 0b001), cswap().matrix(), {0, 1, 2});
    EXPECT_EQ(out[0b001], Complex(1.0));
}

TEST(Cswap, ControlOnSwapsPair) {
    const StateVector out = apply_gate(StateVector::basis(3, 0b101), cswap().matrix(), {0, 1, 2});
    EXPECT_EQ(out[0b110], Complex(1.0));
}

TEST(Cswap, Involution) {
    const Matrix m = cswap().matrix();
    EXPECT_EQ(m * m, Matrix::identity(8));
}

TEST(Cswap, IsPermutationOfFiveAndSix) {
    const Matrix m = cswap().matrix();
    for (std::size_t c = 0; c < 8; ++c) {
        const std::size_t r = c == 5 ? 6 : c == 6 ? 5 : c;
        EXPECT_EQ(m(r, c), Complex(1.0));
    }
}

TEST(ControlledPhase, ZeroIsIdentity) { EXPECT_EQ(controlled_phase(0).matrix(), Matrix::identity(4)); }

TEST(ControlledPhase, PiIsCz) {
    const auto g = controlled_phase(kPi);
    EXPECT_EQ(g.kind(), NativeKind::Cz);
    EXPECT_EQ(g.name(), "cz");
    EXPECT_EQ(g.matrix(), diag4(1, 1, 1, -1));
}

TEST(ControlledPhase, HalfPi) {
    EXPECT_LE(controlled_phase(kPi / 2).matrix().max_abs_diff(diag4(1, 1, 1, -1i)), 1e-15);
}

TEST(NativeGate, AllMatricesUnitary) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> angle(-10, 10);
    for (int k = 0; k < 20; ++k) {
        EXPECT_TRUE(iswap_theta(angle(rng)).matrix().is_unitary(1e-13));
        EXPECT_TRUE(phase_theta_phi(angle(rng), angle(rng)).matrix().is_unitary(1e-13));
        EXPECT_TRUE(controlled_phase(angle(rng)).matrix().is_unitary(1e-13));
    }
    EXPECT_TRUE(cswap().matrix().is_unitary());
}

TEST(NativeGate, RejectsNonFiniteAngles) {
    EXPECT_THROW(iswap_theta(std::nan("")), Error);
    EXPECT_THROW(phase_theta_phi(1.0, INFINITY), Error);
    EXPECT_THROW(controlled_phase(std::nan("")), Error);
}

TEST(NativeGate, FromName) {
    EXPECT_EQ(*native_from_name("cswap", {}), cswap());
    EXPECT_EQ(native_from_name("iswap", {1.5})->matrix(), iswap_theta(1.5).matrix());
    EXPECT_FALSE(native_from_name("h", {}).has_value());
    try {
        native_from_name("phase", {1.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::BadArity);
    }
}

}  // namespace
}  // namespace ensq
