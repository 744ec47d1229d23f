#include <gtest/gtest.h>

#include "json.hpp"

#include "chdyn/dynamics.hpp"
#include "chdyn/error.hpp"
#include "chdyn/maps.hpp"
#include "chdyn/render.hpp"
#include "chdyn/verify.hpp"
#include "oracles.hpp"

using namespace chdyn;

namespace {

const ReportValue& detail(const LemmaReport& r, const std::string& key) {
  for (const auto& [k, v] : r.details) {
    if (k == key) return v;
  }
  throw std::out_of_range(key);
}

double detail_double(const LemmaReport& r, const std::string& key) {
  return std::get<double>(detail(r, key));
}

}  // namespace

TEST(SplitMix, ReferenceSequence) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
  SplitMix64 u(kDefaultSeed);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
}

TEST(Report, PassIffMarginPositive) {
  const LemmaReport reports[] = {
      verify_escape_bound_b(20.0, 200),
      verify_escape_bound_r(3, 0.1, 200),
      verify_zero_interval(3, 10.0),
      verify_critical_value_escape(10.0),
  };
  for (const auto& r : reports) {
    EXPECT_EQ(r.pass, r.worst_margin > 0.0) << r.lemma;
    if (r.pass) {
      EXPECT_TRUE(r.witnesses.empty());
    }
    EXPECT_LE(r.witnesses.size(), kMaxWitnesses);
  }
}

TEST(Report, JsonLineShape) {
  const auto line = verify_escape_bound_b(20.0, 100).to_json_line();
  EXPECT_EQ(line.find('\n'), std::string::npos);
  const auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j.at("lemma"), "escape-b");
  EXPECT_EQ(j.at("seed"), kDefaultSeed);
  EXPECT_EQ(j.at("samples"), 100);
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_EQ(line.rfind("{\"lemma\":", 0), 0u);
}

TEST(Report, SameSeedSameBytes) {
  EXPECT_EQ(verify_escape_bound_r(3, 1000.0, 300, 42).to_json_line(),
            verify_escape_bound_r(3, 1000.0, 300, 42).to_json_line());
  EXPECT_NE(verify_escape_bound_b(20.0, 300, 1).to_json_line(),
            verify_escape_bound_b(20.0, 300, 2).to_json_line());
}

TEST(EscapeB, Examples) {
  EXPECT_TRUE(verify_escape_bound_b(20.0, 1000).pass);
  std::vector<Complex> ring;
  for (int k = 0; k < 64; ++k) ring.push_back(std::polar(3.01, 0.1 * k));
  EXPECT_TRUE(verify_escape_bound_b_at(1.5, ring).pass);
  const Complex z(1001.0, 0.0);
  EXPECT_GT(std::abs(oracle::blaschke(500.0, z)) / std::abs(z), 500.0);
  EXPECT_THROW((void)verify_escape_bound_b(0.5, 10), InvalidArgument);
}

TEST(EscapeB, AcrossParameters) {
  for (double a : {2.0, 20.0, 500.0}) {
    const auto r = verify_escape_bound_b(a, 1000);
    EXPECT_TRUE(r.pass) << a;
    EXPECT_GT(r.worst_margin, 0.0);
  }
}

TEST(CriticalValue, Examples) {
  const auto r500 = verify_critical_value_escape(500.0);
  EXPECT_TRUE(r500.pass);
  EXPECT_TRUE(std::get<bool>(detail(r500, "orbit_escaped")));
  const auto r10 = verify_critical_value_escape(10.0);
  EXPECT_TRUE(r10.pass);
  const auto r450 = verify_critical_value_escape(450.0);
  EXPECT_TRUE(r450.pass);
  EXPECT_NEAR(detail_double(r450, "a2_over_162"), 1250.0, 1e-9);
  EXPECT_GT(detail_double(r450, "margin_a2_162_minus_2a"), 0.0);
  EXPECT_TRUE(std::get<bool>(detail(r450, "orbit_escaped")));
}

TEST(CriticalValue, ValueExceedsBoundOracle) {
  for (double a : {3.0, 10.0, 100.0, 500.0, 5000.0}) {
    const double q = 2 + a * a;
    const double cp = (q + std::sqrt(q * q - 9 * a * a)) / (3 * a);
    EXPECT_GT(cp, a / 2);
    EXPECT_LT(cp, a);
    EXPECT_GT(std::abs(oracle::blaschke(a, cp)), a * a / 162);
  }
}

TEST(ZeroInterval, SignsAndRoot) {
  const auto zi = locate_zero(3, 10.0);
  EXPECT_EQ(zi.lo, 17.0);
  EXPECT_EQ(zi.hi, 20.0);
  EXPECT_GT(zi.root, 17.9);
  EXPECT_LT(zi.root, 18.0);
  EXPECT_NEAR(zi.root, 17.963902335781401707, 1e-12);
  const auto z4 = locate_zero(4, 50.0);
  EXPECT_EQ(z4.lo, 146.0);
  EXPECT_EQ(z4.hi, 150.0);
  EXPECT_NEAR(z4.root, 147.4915536491470965, 1e-11);
  EXPECT_NEAR(locate_zero(5, 100.0).root, 396.99496850091652984, 1e-10);
  const auto s4 = zero_interval_polynomial(4, 50.0);
  EXPECT_GT(s4(146.0).real(), 0.0);
  EXPECT_LT(s4(150.0).real(), 0.0);
}

TEST(ZeroInterval, MatchesBisectionOracle) {
  for (int n = 3; n <= 7; ++n) {
    for (double alpha : {2.01, 3.0, 10.0, 77.0, 1000.0}) {
      const long double want = oracle::bisect(
          [&](long double z) { return oracle::s_poly(n, alpha, z); }, alpha * (n - 1) - n,
          alpha * (n - 1));
      EXPECT_NEAR(locate_zero(n, alpha).root, static_cast<double>(want),
                  1e-12 * static_cast<double>(want))
          << n << " " << alpha;
    }
  }
}

TEST(ZeroInterval, ResidualOfS) {
  for (auto [n, alpha] : {std::pair{3, 10.0}, std::pair{4, 50.0}}) {
    const auto s = zero_interval_polynomial(n, alpha);
    EXPECT_LE(std::abs(s(locate_zero(n, alpha).root)), 1e-8 * s.max_abs_coefficient());
  }
  const auto s5 = zero_interval_polynomial(5, 100.0);
  const double z0 = locate_zero(5, 100.0).root;
  EXPECT_LE(std::abs(s5(z0)), 1e-12 * s5.scale_at(z0));
}

TEST(ZeroInterval, Reports) {
  EXPECT_TRUE(verify_zero_interval(3, 10.0).pass);
  EXPECT_TRUE(verify_zero_interval(4, 50.0).pass);
  EXPECT_TRUE(verify_zero_interval(5, 100.0).pass);
  EXPECT_TRUE(verify_zero_interval(3, 2.01).pass);
  EXPECT_THROW((void)verify_zero_interval(3, 1.5), InvalidArgument);
}

TEST(EscapeR, Examples) {
  EXPECT_TRUE(verify_escape_bound_r(3, 1000.0, 1000).pass);
  EXPECT_TRUE(verify_escape_bound_r(5, 1000.0, 1000).pass);
  const auto tiny = verify_escape_bound_r(3, 0.1, 1000);
  EXPECT_EQ(tiny.pass, tiny.worst_margin > 0.0);
}

TEST(Segment, ConstantsArePositive) {
  for (int n = 3; n <= 8; ++n) {
    const auto k = segment_constants(n);
    EXPECT_GT(k.kappa, 0.0) << n;
    EXPECT_EQ(k.alpha_degree_num, 2 * n);
    EXPECT_EQ(k.alpha_degree_den, 2 * n);
  }
  EXPECT_NEAR(segment_constants(3).kappa, 0.00223607, 1e-8);
}

TEST(Segment, Examples) {
  EXPECT_TRUE(verify_segment(3, 1000.0, 201).pass);
  EXPECT_TRUE(verify_segment(4, 2000.0, 201).pass);
  EXPECT_TRUE(verify_segment(5, 2000.0, 201).pass);
  EXPECT_GT(std::sqrt(5.0) / 2, 1.0);
}

TEST(Conjugacies, Examples) {
  const auto r = verify_conjugacies(3, 10.0, Complex(-1, 2), 500);
  EXPECT_TRUE(r.pass);
  for (const char* key : {"eta_c", "rotation", "m_r", "ch_step"}) {
    EXPECT_LE(detail_double(r, key), kConjugacyTol) << key;
  }
  const auto r2 = verify_conjugacies(2, 3.0, Complex(-1, 2), 500);
  EXPECT_TRUE(r2.pass);
  EXPECT_LE(detail_double(r2, "m2_blaschke"), kConjugacyTol);
}

TEST(Conjugacies, TrivialRotationIsExact) {
  const auto spec = MapSpec::o_family(3, 10.0);
  for (Complex z : {Complex(0.3, 0.2), Complex(-4, 1)}) {
    const auto rotated = MobiusMap::rotation(1.0)(z);
    EXPECT_EQ(eval(spec, rotated), eval(spec, z));
  }
}

TEST(Conjugacies, RandomParameters) {
  SplitMix64 rng(77);
  for (int n = 2; n <= 6; ++n) {
    for (int k = 0; k < 3; ++k) {
      const Complex alpha(2 + 20 * rng.uniform(), 4 * rng.uniform() - 2);
      const Complex c(4 * rng.uniform() - 2, 4 * rng.uniform() - 2);
      EXPECT_TRUE(verify_conjugacies(n, alpha, c, 200, rng.next()).pass) << n << alpha;
    }
  }
}

TEST(Symmetry, O3Alpha10AndNewton) {
  RenderConfig cfg;
  cfg.exec.workers = 2;
  const auto g = classify_dynamical(MapSpec::o_family(3, 10.0), {-10, 10, -10, 10, 240, 240}, cfg);
  EXPECT_TRUE(symmetry_report(g, 3).pass);
  const auto nw = classify_dynamical(MapSpec::newton(3), {-2, 2, -2, 2, 240, 240}, cfg);
  const auto r = symmetry_report(nw, 3);
  EXPECT_TRUE(r.pass);
  EXPECT_GE(detail_double(r, "fraction"), kSymmetryThreshold);
}

TEST(Symmetry, AsymmetricWindowRejected) {
  RenderConfig cfg;
  const auto g = classify_dynamical(MapSpec::newton(3), {-1, 3, -2, 2, 32, 32}, cfg);
  EXPECT_THROW((void)symmetry_report(g, 3), WindowNotSymmetric);
}

TEST(Symmetry, DetectsBrokenSymmetry) {
  RenderConfig cfg;
  // Nearly Newton on z^3 - 2z + 2, which has no rotational symmetry.
  const auto spec = MapSpec::generic_ch(Polynomial{2.0, -2.0, 0.0, 1.0}, 1e6);
  const auto g = classify_dynamical(spec, {-2, 2, -2, 2, 120, 120}, cfg);
  EXPECT_FALSE(symmetry_report(g, 3, default_targets(spec)).pass);
}
