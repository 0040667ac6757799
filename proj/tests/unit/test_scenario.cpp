#include <gtest/gtest.h>

#include <cstdlib>

#include "superbv/random.hpp"
#include "superbv/scenario.hpp"

using namespace sbv;

namespace {

Jet gen(const RingSignature& s, GenKind k, int i) { return Jet::generator(s, {k, i}); }

ParseError::Kind kind_of(std::string_view text) {
  try {
    (void)parse_scenario(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ParseError::Kind::semantic;
}

}  // namespace

TEST(Scenario, LetDefinition) {
  Scenario s = parse_scenario("ring 1|1 cap 4; let h = 1 + z1;");
  EXPECT_EQ(s.sig, (RingSignature{1, 1, 4}));
  ASSERT_EQ(s.functions.size(), 1u);
  EXPECT_TRUE(s.functions.at("h").identical(Jet(s.sig, 1) + gen(s.sig, GenKind::z, 0)));
}

TEST(Scenario, SectionBidegree) {
  Scenario s = parse_scenario("ring 1|1 cap 4; section a = (dzb1) * dv(z1) * th1;");
  const auto& a = s.sections.at("a");
  ASSERT_TRUE(a.pq().has_value());
  EXPECT_EQ(*a.pq(), std::make_pair(1, 1));
  EXPECT_EQ(degree_of(a).parity, Parity::odd);
  EXPECT_EQ(degree_of(a).cohom, 2);
}

TEST(Scenario, WedgeLiteral) {
  Scenario s = parse_scenario("ring 2|0 cap 3; section a = (dzb^1 ^ dzb^2) * dv(z1) * (1 + z1*z2);");
  Chart c = s.chart();
  MultiVectorForm expect = wedge(wedge(MultiVectorForm::barred_form(c, 0), MultiVectorForm::barred_form(c, 1)),
                                 wedge(MultiVectorForm::vector(c, 0),
                                       MultiVectorForm::function(c, Jet(s.sig, 1) + gen(s.sig, GenKind::z, 0) *
                                                                                        gen(s.sig, GenKind::z, 1))));
  EXPECT_EQ(s.sections.at("a"), expect);
  EXPECT_EQ(*s.sections.at("a").pq(), std::make_pair(1, 2));
}

TEST(Scenario, SyntaxErrorPosition) {
  try {
    (void)parse_scenario("ring 1|1 cap 4;\nlet h = 1 +;");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::syntax);
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 12);
  }
}

TEST(Scenario, ErrorKinds) {
  EXPECT_EQ(kind_of("ring 1|1 cap 4; let h = 1 + w;"), ParseError::Kind::unknown_name);
  EXPECT_EQ(kind_of("ring 1|1 cap 4; ber w = th1;"), ParseError::Kind::parity);
  EXPECT_EQ(kind_of("ring 1|1 cap 4; section a = dv(z1) + th1;"), ParseError::Kind::parity);
  EXPECT_EQ(kind_of("ring 1|1 cap 4; map phi { z1 = th1; }"), ParseError::Kind::parity);
  EXPECT_EQ(kind_of("ring 1|1 cap 4; connection { Gamma[z1][z1][z1] = th1; }"), ParseError::Kind::parity);
  EXPECT_EQ(kind_of("ring 1|1 cap 4; let h = z1^5;"), ParseError::Kind::cap_overflow);
  EXPECT_NO_THROW(parse_scenario("ring 1|1 cap 4; let h = (z1 + z1^2)^3;"));
  EXPECT_EQ(kind_of("ring 1|1 cap 4; let h = z1 / z1;"), ParseError::Kind::semantic);
  EXPECT_EQ(kind_of("ring 1|1 cap 4; suite nonsense;"), ParseError::Kind::unknown_name);
  EXPECT_EQ(kind_of("ring 1|1 cap 4; let h = 1; let h = 2;"), ParseError::Kind::semantic);
  EXPECT_EQ(kind_of("let h = 1; ring 1|1;"), ParseError::Kind::semantic);
  EXPECT_EQ(kind_of("ring 1|1 cap 4; let h = 1 $ 2;"), ParseError::Kind::syntax);
  EXPECT_EQ(kind_of("ring 1|1 cap 4; let h = dv(z1);"), ParseError::Kind::semantic);
}

TEST(Scenario, CapOverflowOnlyAboveCap) {
  EXPECT_NO_THROW(parse_scenario("ring 1|1 cap 4; let h = z1^4; let g = (1 + z1)^9;"));
  EXPECT_EQ(kind_of("ring 2|1 cap 3; let h = (z1*z2)^2;"), ParseError::Kind::cap_overflow);
}

TEST(Scenario, RenderExamples) {
  RingSignature s{1, 2, 4};
  Jet z = gen(s, GenKind::z, 0);
  EXPECT_EQ(render(Jet(s, 1) - z + z * z), "1 - z1 + z1^2");
  EXPECT_EQ(render(parse_jet(s, "th2*th1")), "- th1*th2");
  EXPECT_EQ(render(parse_ber(Chart{s}, "(1 + z1) [dxi]")), "(1 + z1) [dxi]");
  EXPECT_EQ(render(parse_jet(s, "1 + z1 + O(3)")), "1 + z1 + O(3)");
}

TEST(Scenario, Definitions) {
  Scenario s = parse_scenario(R"(
    # comment
    ring 2|1 cap 4;
    let f = (1 + z1) * th1 / 2 + i*z2;
    ber w = (1 + z1*z2) [dxi];
    section a = dzb1 * dv(th1) * (1 + z2);
    map phi { zeta1 = z1 + z1^2; th1 = (1 + z2) * th1; }
    connection G { Gamma[z1][z2][th1] = th1; Gamma[th1][z1][th1] = z1; }
    order = 3;
    path gamma { z1 = t + t^2; th1 = eta1 * t; }
    seed = 7; trials = 9;
    suite tian_todorov; suite covariance;
  )");
  const auto& sig = s.sig;
  EXPECT_EQ(s.seed, 7u);
  EXPECT_EQ(s.trials, 9);
  EXPECT_EQ(s.order, 3);
  EXPECT_EQ(s.suites, (std::vector<std::string>{"tian_todorov", "covariance"}));
  Jet z1 = gen(sig, GenKind::z, 0), z2 = gen(sig, GenKind::z, 1), th = gen(sig, GenKind::theta, 0);
  EXPECT_EQ(s.functions.at("f"), (Jet(sig, 1) + z1) * th * GaussianRational::ratio(1, 2) + z2 * GaussianRational::i());
  EXPECT_EQ(s.bers.at("w").coefficient, Jet(sig, 1) + z1 * z2);
  const auto& phi = s.maps.at("phi");
  EXPECT_EQ(phi.images[0], z1 + z1 * z1);
  EXPECT_EQ(phi.images[1], z2);
  EXPECT_EQ(phi.images[2], (Jet(sig, 1) + z2) * th);
  const auto& g = s.connections.at("G");
  EXPECT_EQ(g(0, 1, 2), th);
  EXPECT_EQ(g(2, 0, 2), z1);
  const auto& p = s.paths.at("gamma");
  EXPECT_EQ(p.order(), 3);
  EXPECT_EQ(p.ring.m, 1);
  // evaluation sees the definitions
  EXPECT_EQ(std::get<Jet>(evaluate(s, "d(f, th1)")), (Jet(sig, 1) + z1) * GaussianRational::ratio(1, 2));
  auto v = evaluate(s, "schouten(dv(z1), z1)");
  EXPECT_EQ(std::get<MultiVectorForm>(v), MultiVectorForm::function(s.chart(), Jet(sig, 1)));
  auto dl = evaluate(s, "delta(w, dv(z1))");
  EXPECT_EQ(std::get<MultiVectorForm>(dl), MultiVectorForm::function(s.chart(), z2 * invert(Jet(sig, 1) + z1 * z2)));
}

TEST(Scenario, DefaultCapFromEnvironment) {
  ::setenv("SUPERBV_DEFAULT_CAP", "3", 1);
  EXPECT_EQ(parse_scenario("ring 1|1;").sig.cap, 3);
  ::setenv("SUPERBV_DEFAULT_CAP", "junk", 1);
  EXPECT_EQ(parse_scenario("ring 1|1;").sig.cap, 6);
  ::unsetenv("SUPERBV_DEFAULT_CAP");
  EXPECT_EQ(default_cap(), 6);
}

class RoundTrip : public ::testing::TestWithParam<RingSignature> {};

TEST_P(RoundTrip, RenderedValuesParseBack) {
  const auto sig = GetParam();
  const Chart c{sig};
  Rng rng(derive_seed(71, static_cast<std::uint64_t>(sig.n * 10 + sig.m)));
  for (int t = 0; t < 25; ++t) {
    Jet f = random_jet(sig, rng, std::nullopt, JetShape{sig.cap, 8, false, true});
    if (t % 3 == 0) f = f.truncated(rng.uniform(0, sig.cap - 1));
    EXPECT_TRUE(parse_jet(sig, render(f)).identical(f)) << render(f);

    auto a = random_mvform(c, rng, rng.uniform(0, 2), rng.uniform(0, 2), parity_of(t));
    EXPECT_EQ(parse_mvform(c, render(a)), a) << render(a);

    BerSection w{c, random_unit(sig, rng, t % 2 == 0)};
    EXPECT_TRUE(parse_ber(c, render(w)).coefficient.identical(w.coefficient)) << render(w);

    Morphism phi = random_morphism(c, c, rng);
    Morphism back = parse_map(c, render(phi, "phi"));
    for (std::size_t k = 0; k < phi.images.size(); ++k) EXPECT_TRUE(back.images[k].identical(phi.images[k]));
  }
}

INSTANTIATE_TEST_SUITE_P(Signatures, RoundTrip,
                         ::testing::Values(RingSignature{1, 1, 4}, RingSignature{2, 1, 4}, RingSignature{2, 2, 3}));
