#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "rotlink/channel.hpp"
#include "rotlink/pipeline.hpp"
#include "test_support.hpp"

using namespace rotlink;
using cplx = std::complex<double>;

TEST_CASE("frame geometry: symbol counts and padding") {
  auto code = peg_code(32, 16, 3, 3);
  auto qpsk = make_constellation(ConstellationKind::Qpsk);
  auto qam = make_constellation(ConstellationKind::Gray16Qam);

  auto c2 = make_tx_config(code.h, code.encoder, qpsk, 4);
  CHECK(c2.frame_symbols() == 16);
  CHECK(c2.pad_bits() == 0);

  auto c4 = make_tx_config(code.h, code.encoder, qam, 4);
  CHECK(c4.frame_symbols() == 8);
  CHECK(c4.pad_bits() == 0);

  // 10 code bits over 16qam: three symbols, two zero bits of padding.
  auto small = testsup::random_full_rank(10, 5, 42);
  auto enc = build_encoder(small);
  auto cp = make_tx_config(small, enc, qam, 2);
  CHECK(cp.frame_symbols() == 3);
  CHECK(cp.pad_bits() == 2);
}

TEST_CASE("encode_frame is rotation applied to the mapped codeword") {
  auto code = peg_code(32, 16, 3, 3);
  auto qpsk = make_constellation(ConstellationKind::Qpsk);
  auto cfg = make_tx_config(code.h, code.encoder, qpsk, 3);
  std::mt19937_64 rng(81);
  auto u = testsup::random_word(16, rng);
  auto v = ExtraBits::from_value(5, 3);

  auto x = encode_frame(u, v, cfg);
  auto manual = rotate(map_bits(code.encoder.encode(u), qpsk), angle_of(v));
  REQUIRE(x.size() == manual.size());
  for (size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - manual[i]) < 1e-15);
  for (auto s : x) CHECK(std::abs(std::norm(s) - 1.0) < 1e-12);
}

TEST_CASE("noiseless frames decode exactly for every extra word") {
  auto code = peg_code(128, 64, 3, 4);
  std::mt19937_64 rng(82);
  for (auto kind : {ConstellationKind::Qpsk, ConstellationKind::Gray16Qam}) {
    auto cons = make_constellation(kind);
    for (int ell : {1, 2, 3}) {
      auto cfg = make_tx_config(code.h, code.encoder, cons, ell);
      for (uint32_t d = 0; d < (uint32_t{1} << ell); ++d) {
        auto u = testsup::random_word(code.encoder.info_length(), rng);
        auto v = ExtraBits::from_value(d, ell);
        auto x = encode_frame(u, v, cfg);
        auto res = decode_frame(x, cfg, 0.05, 50);
        score_frame(res, u, v);
        CHECK(res.v_hat == v);
        CHECK(res.u_hat == u);
        CHECK(res.angle_correct);
        CHECK(res.payload_bit_errors == 0);
        CHECK(res.spa_converged);
        CHECK(res.spa_iterations == 0);
      }
    }
  }
}

TEST_CASE("padding path: code length not divisible by the symbol size") {
  auto h = testsup::random_full_rank(10, 5, 42);
  auto enc = build_encoder(h);
  auto qam = make_constellation(ConstellationKind::Gray16Qam);
  auto cfg = make_tx_config(h, enc, qam, 2);
  std::mt19937_64 rng(83);
  for (int t = 0; t < 20; ++t) {
    auto u = testsup::random_word(5, rng);
    auto v = ExtraBits::from_value(uint32_t(rng() % 4), 2);
    auto x = encode_frame(u, v, cfg);
    REQUIRE(x.size() == 3);
    auto res = decode_frame(x, cfg, 0.01, 50);
    score_frame(res, u, v);
    CHECK(res.v_hat == v);
    CHECK(res.u_hat == u);
    CHECK(res.payload_bit_errors == 0);
  }
}

TEST_CASE("moderate noise: the full chain still recovers both payloads") {
  const auto& code = testsup::big_code();
  auto qpsk = make_constellation(ConstellationKind::Qpsk);
  auto cfg = make_tx_config(code.h, code.encoder, qpsk, 4);
  // 4 dB Eb/N0 sits comfortably inside the code's waterfall.
  auto spec = sigma_from_snr(4.0, 0.5, 2, SnrConvention::EbN0);
  std::mt19937_64 rng(84);
  int bad = 0;
  for (int t = 0; t < 10; ++t) {
    auto u = testsup::random_word(code.encoder.info_length(), rng);
    auto v = ExtraBits::from_value(uint32_t(rng() % 16), 4);
    auto x = map_bits(code.encoder.encode(u), qpsk);
    auto y = rotate(awgn(x, spec, rng), angle_of(v));
    auto res = decode_frame(y, cfg, spec.sigma2, 50);
    score_frame(res, u, v);
    if (!res.angle_correct || res.payload_bit_errors > 0) ++bad;
    CHECK(res.candidates.size() == 4);
  }
  CHECK(bad == 0);
}

TEST_CASE("a forced wrong rotation scrambles the payload at the relabeling rate") {
  // The residual rotation relabels every symbol. For the sequential qpsk
  // labels a half turn flips the first bit of each pair (raw rate 1/2) and a
  // quarter turn flips the second bit always and the first for half the
  // symbols (raw rate 3/4); the failed decode stays near those rates.
  const auto& code = testsup::big_code();
  auto qpsk = make_constellation(ConstellationKind::Qpsk);
  auto cfg = make_tx_config(code.h, code.encoder, qpsk, 4);
  const int k = code.encoder.info_length();
  std::mt19937_64 rng(85);

  auto run_forced = [&](int true_idx, int forced_idx) {
    auto u = testsup::random_word(k, rng);
    auto v = ExtraBits::from_value(uint32_t(true_idx), 4);
    auto res = decode_frame_at_angle(encode_frame(u, v, cfg), cfg, 0.05, 50,
                                     grid_angle(forced_idx, 4));
    score_frame(res, u, v);
    CHECK(res.v_hat.decimal() == uint32_t(forced_idx));
    CHECK_FALSE(res.angle_correct);
    return res.payload_bit_errors;
  };

  double half_turn = 0.0, quarter_turn = 0.0;
  for (int t = 0; t < 5; ++t) {
    half_turn += run_forced(3, 11);     // offset 8/16 of a turn = pi
    quarter_turn += run_forced(3, 7);   // offset 4/16 of a turn = pi/2
  }
  half_turn /= 5.0 * k;
  quarter_turn /= 5.0 * k;
  CHECK(half_turn > 0.35);
  CHECK(half_turn < 0.65);
  CHECK(quarter_turn > 0.6);
  CHECK(quarter_turn < 0.9);
}

TEST_CASE("decode at the true angle equals the payload leg of the full decoder") {
  const auto& code = testsup::big_code();
  auto qam = make_constellation(ConstellationKind::Gray16Qam);
  auto cfg = make_tx_config(code.h, code.encoder, qam, 2);
  auto spec = sigma_from_snr(7.0, 0.5, 4, SnrConvention::EbN0);
  std::mt19937_64 rng(86);
  auto u = testsup::random_word(code.encoder.info_length(), rng);
  auto v = ExtraBits::from_value(1, 2);
  auto x = map_bits(code.encoder.encode(u), qam);
  auto y = rotate(awgn(x, spec, rng), angle_of(v));

  auto full = decode_frame(y, cfg, spec.sigma2, 50);
  auto forced = decode_frame_at_angle(y, cfg, spec.sigma2, 50, angle_of(v));
  REQUIRE(full.v_hat == v);
  CHECK(full.payload_hard_bits == forced.payload_hard_bits);
  CHECK(full.u_hat == forced.u_hat);
  CHECK(full.spa_iterations == forced.spa_iterations);
}

TEST_CASE("score_frame counts exactly the differing info bits") {
  auto code = peg_code(32, 16, 3, 3);
  auto qpsk = make_constellation(ConstellationKind::Qpsk);
  auto cfg = make_tx_config(code.h, code.encoder, qpsk, 2);
  std::mt19937_64 rng(87);
  auto u = testsup::random_word(16, rng);
  auto v = ExtraBits::from_value(2, 2);
  auto res = decode_frame(encode_frame(u, v, cfg), cfg, 0.05, 50);

  auto wrong_u = u;
  wrong_u[0] ^= 1;
  wrong_u[7] ^= 1;
  score_frame(res, wrong_u, v);
  CHECK(res.payload_bit_errors == 2);
  CHECK(res.angle_correct);

  auto wrong_v = ExtraBits::from_value(1, 2);
  score_frame(res, u, wrong_v);
  CHECK_FALSE(res.angle_correct);
}

TEST_CASE("decode_frame validates the received length") {
  auto code = peg_code(32, 16, 3, 3);
  auto qpsk = make_constellation(ConstellationKind::Qpsk);
  auto cfg = make_tx_config(code.h, code.encoder, qpsk, 2);
  std::vector<cplx> bad(5, cplx(1.0, 0.0));
  CHECK_THROWS_AS(decode_frame(bad, cfg, 0.1, 50), std::invalid_argument);
}

TEST_CASE("tx config validation") {
  auto code = peg_code(32, 16, 3, 3);
  auto qpsk = make_constellation(ConstellationKind::Qpsk);
  CHECK_THROWS_AS(make_tx_config(code.h, code.encoder, qpsk, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_tx_config(code.h, code.encoder, qpsk, 17), std::invalid_argument);
  auto other = peg_code(16, 8, 3, 1);
  CHECK_THROWS_AS(make_tx_config(code.h, other.encoder, qpsk, 2), std::invalid_argument);
}
