// Copyright 2026 The Beamsel Authors. All Rights Reserved.
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

#include <algorithm>
#include <cmath>

#include "beamsel/beamspace.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace beamsel;

TEST_SUITE("beamspace") {
  TEST_CASE("lens matrix") {
    const LensMatrix one = lens_dft_matrix(1);
    REQUIRE(one.size() == 1);
    CHECK(std::abs(one.U(0, 0) - cplx(1.0, 0.0)) < 1e-15);

    for (int N : {2, 3, 16, 64, 256}) {
      const LensMatrix lens = lens_dft_matrix(N);
      CHECK((lens.U * lens.U.adjoint() - Eigen::MatrixXcd::Identity(N, N)).norm() < 1e-10);
      for (int n : {0, N / 2, N - 1}) {
        const Eigen::VectorXcd e = lens.U * steering_vector(N, beam_grid_frequency(N, n));
        Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(N);
        expect(n) = 1.0;
        CHECK((e - expect).norm() < 1e-10);
      }
    }
    // Symmetric grid spans [-1/2, 1/2).
    CHECK(beam_grid_frequency(4, 0) == doctest::Approx(-0.375));
    CHECK(beam_grid_frequency(4, 3) == doctest::Approx(0.375));
  }

  TEST_CASE("beam set bookkeeping") {
    BeamSet s(3);
    s.add(4);
    s.add(1);
    CHECK_THROWS_AS(s.add(4), std::domain_error);
    s.add(7);
    CHECK(s.full());
    CHECK_THROWS_AS(s.add(2), std::domain_error);
    CHECK(s.beams() == std::vector<int>{4, 1, 7});
  }

  TEST_CASE("transform preserves energy and inverts") {
    std::mt19937_64 rng(3);
    const int N = 32;
    const ChannelSet spatial = oracle::random_beamspace(N, 4, 6, rng);
    const LensMatrix lens = lens_dft_matrix(N);
    const ChannelSet beamspace = to_beamspace(spatial, lens);
    for (int k = 0; k < 6; ++k) {
      CHECK(std::abs(beamspace.H[k].norm() - spatial.H[k].norm()) < 1e-10);
      CHECK((lens.U.adjoint() * beamspace.H[k] - spatial.H[k]).norm() < 1e-10);
    }
    std::vector<int> all(N);
    for (int n = 0; n < N; ++n) all[n] = n;
    const ChannelSet same = reduce(beamspace, all);
    for (int k = 0; k < 6; ++k) CHECK((same.H[k].array() == beamspace.H[k].array()).all());

    ChannelSet wrong;
    wrong.H.push_back(Eigen::MatrixXcd::Zero(8, 2));
    CHECK_THROWS_AS(to_beamspace(wrong, lens), std::domain_error);
  }

  TEST_CASE("on-grid path lands in one beam") {
    const int N = 16, n = 11;
    ChannelSet spatial;
    spatial.H.push_back(steering_vector(N, beam_grid_frequency(N, n)));
    const ChannelSet beamspace = to_beamspace(spatial, lens_dft_matrix(N));
    for (int b = 0; b < N; ++b) {
      CHECK(std::abs(beamspace.H[0](b, 0) - cplx(b == n ? 1.0 : 0.0, 0.0)) < 1e-12);
    }
  }

  TEST_CASE("reduce equals the explicit selector product") {
    std::mt19937_64 rng(5);
    const int N = 12;
    const ChannelSet beamspace = oracle::random_beamspace(N, 3, 4, rng);
    const std::vector<int> beams{7, 2, 10, 0};
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(N, beams.size());
    for (std::size_t i = 0; i < beams.size(); ++i) S(beams[i], i) = 1.0;
    const ChannelSet r = reduce(beamspace, beams);
    for (int k = 0; k < 4; ++k) {
      CHECK((r.H[k] - S.adjoint() * beamspace.H[k]).norm() == 0.0);
    }
    const std::vector<int> single{5};
    CHECK((reduce(beamspace, single).H[2] - beamspace.H[2].row(5)).norm() == 0.0);

    CHECK_THROWS_AS(reduce(beamspace, std::vector<int>{}), std::domain_error);
    CHECK_THROWS_AS(reduce(beamspace, std::vector<int>{N}), std::domain_error);
    CHECK_THROWS_AS(reduce(beamspace, std::vector<int>{-1}), std::domain_error);
  }

  TEST_CASE("band-averaged energy profile") {
    std::mt19937_64 rng(8);
    const ChannelSet one = oracle::random_beamspace(10, 2, 1, rng);
    const Eigen::VectorXd p1 = beam_energy_profile(one, 1);
    for (int b = 0; b < 10; ++b) CHECK(p1(b) == doctest::Approx(std::norm(one.H[0](b, 1))));

    const ChannelSet many = oracle::random_beamspace(10, 2, 7, rng);
    double expect = 0.0;
    for (const auto& Hk : many.H) expect += Hk.col(0).squaredNorm();
    CHECK(beam_energy_profile(many, 0).sum() == doctest::Approx(expect / 7));
    CHECK_THROWS_AS(beam_energy_profile(many, 2), std::domain_error);

    // Per-subcarrier global phase rotation leaves the profile unchanged.
    ChannelSet rotated = many;
    for (int k = 0; k < 7; ++k) rotated.H[k].col(0) *= std::polar(1.0, 0.7 * k + 0.1);
    CHECK((beam_energy_profile(rotated, 0) - beam_energy_profile(many, 0)).norm() < 1e-12);
  }

  TEST_CASE("squinted path peaks between its band-edge beams") {
    SystemConfig cfg;
    cfg.U = 1;
    cfg.L = 1;
    cfg.N_RF = 1;
    std::vector<UserPathParams> params(1);
    params[0].paths = {{0.5, 4 * cfg.T_s, 1.0}};
    const ChannelSet beamspace =
        to_beamspace(frequency_channel(params, cfg), lens_dft_matrix(cfg.N));
    Eigen::Index lo, hi, mid;
    beamspace.H.front().col(0).cwiseAbs2().maxCoeff(&lo);
    beamspace.H.back().col(0).cwiseAbs2().maxCoeff(&hi);
    beam_energy_profile(beamspace, 0).maxCoeff(&mid);
    CHECK(std::abs(2.0 * mid - (lo + hi)) <= 2.0);
  }

  TEST_CASE("rank ordering breaks ties by index") {
    Eigen::VectorXd v(5);
    v << 1.0, 3.0, 3.0, 0.5, 3.0;
    CHECK(rank_descending(v) == std::vector<int>{1, 2, 4, 0, 3});
  }
}
