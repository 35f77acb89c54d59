#include <catch2/catch_amalgamated.hpp>

#include "ocposet/recognizer.hpp"
#include "support.hpp"

using namespace ocposet;
using testsupport::random_poset;

namespace {

const Representation* as_rep(const RecognizeResult& r) { return std::get_if<Representation>(&r); }
const Certificate* as_cert(const RecognizeResult& r) { return std::get_if<Certificate>(&r); }

}  // namespace

TEST_CASE("narrowing rules") {
  auto chain = Poset::from_relations({"a", "b"}, {{"a", "b"}});
  auto st = start_pass(chain, 0, {0, 1}, Dyadic(0));
  CHECK(st.lo[1] == Dyadic(-3));
  CHECK(st.hi[1] == Dyadic(3));

  auto r = narrowing_step(st, 0, 1);  // a comes before b: raise the lower bound
  CHECK(r.lo_changed);
  CHECK_FALSE(r.hi_changed);
  CHECK(st.lo[1] == Dyadic(1));
  CHECK(st.f[1] == 0);
  CHECK(st.g[1] == -1);
  CHECK_FALSE(narrowing_step(st, 0, 1).changed());  // idempotent once tight

  auto st2 = start_pass(chain, 0, {1, 0}, Dyadic(0));  // anchor above: rule 3
  auto r2 = narrowing_step(st2, 0, 1);
  CHECK(r2.hi_changed);
  CHECK(st2.hi[1] == Dyadic(-1));
  CHECK(st2.g[1] == 0);

  auto anti = Poset::from_relations({"a", "b"}, {});
  auto st3 = start_pass(anti, 0, {0, 1}, Dyadic(0));
  auto r3 = narrowing_step(st3, 0, 1);  // incomparable: both bounds move
  CHECK(r3.lo_changed);
  CHECK(r3.hi_changed);
  CHECK(st3.lo[1] == Dyadic(-1));
  CHECK(st3.hi[1] == Dyadic(1));
}

TEST_CASE("labeling loop pins 2+2 in pass 0") {
  auto p = catalog("2+2");
  auto st = start_pass(p, 0, {0, 1, 2, 3}, Dyadic(0));
  REQUIRE_FALSE(init_sweep(st).has_value());
  auto lr = labeling_loop(st);
  REQUIRE_FALSE(lr.violated.has_value());
  CHECK(lr.fixed == std::vector<int>{0, 1, 2, 3});
  const Dyadic want[] = {Dyadic(0), Dyadic(1), Dyadic(0), Dyadic(1)};  // x y z w
  for (int t = 0; t < 4; ++t) {
    CAPTURE(t);
    CHECK(st.lo[t] == want[t]);
    CHECK(st.hi[t] == want[t]);
  }
}

TEST_CASE("labeling loop fails fast on 4+1") {
  auto p = catalog("4+1");
  auto st = start_pass(p, 0, {0, 1, 2, 3, 4}, Dyadic(0));
  auto early = init_sweep(st);
  std::optional<int> violated = early;
  if (!violated) violated = labeling_loop(st).violated;
  REQUIRE(violated.has_value());
  auto cert = trace_certificate(st, *violated);
  REQUIRE(std::holds_alternative<PositiveCycleCert>(cert));
  CHECK(trail_value(p, std::get<PositiveCycleCert>(cert).cycle) >= 1);
  CHECK(verify_certificate(p, cert));
}

TEST_CASE("labeling loop leaves loose elements unfixed") {
  auto anti = Poset::from_relations({"a", "b"}, {});
  auto st = start_pass(anti, 0, {0, 1}, Dyadic(0));
  REQUIRE_FALSE(init_sweep(st).has_value());
  auto lr = labeling_loop(st);
  REQUIRE_FALSE(lr.violated.has_value());
  CHECK(lr.fixed == std::vector<int>{0});  // only the anchor
  CHECK(st.lo[1] == Dyadic(-1));
  CHECK(st.hi[1] == Dyadic(1));
}

TEST_CASE("type independence of a placed pair") {
  auto p = catalog("3+1");
  CHECK(type_independent("x", "y", Dyadic(0), Dyadic::from_parts(9, 2), p));
  CHECK_FALSE(type_independent("x", "u", Dyadic(0), Dyadic(1), p));       // incomparable, gap 1
  CHECK_FALSE(type_independent("x", "y", Dyadic(0), Dyadic(1), p));       // comparable, gap 1
  CHECK(type_independent("x", "u", Dyadic(0), Dyadic::from_parts(1, 1), p));
  CHECK(type_independent("y", "x", Dyadic::from_parts(5, 1), Dyadic(0), p));
  CHECK_FALSE(type_independent("y", "x", Dyadic(1), Dyadic(0), p));
}

TEST_CASE("recognizing 2+2") {
  auto p = catalog("2+2");
  auto res = recognize(p, TypeSet::parse("CD"));
  const auto* rep = as_rep(res);
  REQUIRE(rep != nullptr);
  CHECK(rep->intervals.at("x") == PlacedInterval{Dyadic(0), IntervalType::C});
  CHECK(rep->intervals.at("y") == PlacedInterval{Dyadic(1), IntervalType::C});
  CHECK(rep->intervals.at("z") == PlacedInterval{Dyadic(0), IntervalType::D});
  CHECK(rep->intervals.at("w") == PlacedInterval{Dyadic(1), IntervalType::D});
  CHECK(validate(*rep, p, TypeSet::parse("CD")).ok);

  auto refusal = recognize(p, TypeSet::parse("AB"));
  const auto* cert = as_cert(refusal);
  REQUIRE(cert != nullptr);
  const auto* zc = std::get_if<ZeroCycleCert>(cert);
  REQUIRE(zc != nullptr);
  CHECK(zc->cycle.nodes == std::vector<std::string>{"x", "y", "z", "w", "x"});
  CHECK(zc->cycle.steps == std::vector<Step>{Step::prec, Step::par, Step::prec, Step::par});
  CHECK(zc->centers.at("x") == Dyadic(0));
  CHECK(zc->centers.at("y") == Dyadic(1));
  CHECK(zc->centers.at("z") == Dyadic(0));
  CHECK(zc->centers.at("w") == Dyadic(1));
  CHECK(zc->allowed == TypeSet::parse("AB"));
  CHECK(verify_certificate(p, *cert));
}

TEST_CASE("recognizing 3+1") {
  auto p = catalog("3+1");
  auto refusal = recognize(p, TypeSet::parse("BC"));
  const auto* cert = as_cert(refusal);
  REQUIRE(cert != nullptr);
  const auto* zc = std::get_if<ZeroCycleCert>(cert);
  REQUIRE(zc != nullptr);
  CHECK(zc->cycle.nodes == std::vector<std::string>{"x", "y", "z", "u", "x"});
  CHECK(zc->centers.at("z") == Dyadic(2));
  CHECK(zc->centers.at("u") == Dyadic(1));
  CHECK(verify_certificate(p, *cert));

  auto ok = recognize(p, TypeSet::parse("AC"));
  const auto* rep = as_rep(ok);
  REQUIRE(rep != nullptr);
  CHECK(validate(*rep, p, TypeSet::parse("AC")).ok);
}

TEST_CASE("recognizing 4+1 yields a positive cycle") {
  auto p = catalog("4+1");
  auto res = recognize(p, TypeSet::all());
  const auto* cert = as_cert(res);
  REQUIRE(cert != nullptr);
  const auto* pc = std::get_if<PositiveCycleCert>(cert);
  REQUIRE(pc != nullptr);
  CHECK(trail_value(p, pc->cycle) >= 1);
  CHECK(verify_certificate(p, *cert));
}

TEST_CASE("recognizing Z") {
  auto p = catalog("Z");
  auto ok = recognize(p, TypeSet::parse("AC"));
  REQUIRE(as_rep(ok) != nullptr);
  CHECK(validate(*as_rep(ok), p, TypeSet::parse("AC")).ok);

  auto refusal = recognize(p, TypeSet::parse("CD"));
  const auto* zc = std::get_if<ZeroCycleCert>(as_cert(refusal));
  REQUIRE(zc != nullptr);
  CHECK(zc->cycle.nodes ==
        std::vector<std::string>{"x", "y", "z", "w", "v", "u", "x"});
  CHECK(zc->centers.at("w") == Dyadic(3));
  CHECK(verify_certificate(p, *as_cert(refusal)));
}

TEST_CASE("edge inputs") {
  CHECK_THROWS_AS(recognize(catalog("2+2"), TypeSet(0)), Error);
  auto res = recognize(Poset{}, TypeSet::parse("A"));
  REQUIRE(as_rep(res) != nullptr);
  CHECK(as_rep(res)->intervals.empty());

  auto single = Poset::from_relations({"only"}, {});
  auto r1 = recognize(single, TypeSet::parse("DB"));
  REQUIRE(as_rep(r1) != nullptr);
  CHECK(as_rep(r1)->intervals.at("only").center == Dyadic(0));
  CHECK(as_rep(r1)->intervals.at("only").type == IntervalType::B);  // first of the set
}

TEST_CASE("twins share one interval") {
  auto anti = Poset::from_relations({"a", "b"}, {});
  auto res = recognize(anti, TypeSet::parse("A"));
  REQUIRE(as_rep(res) != nullptr);
  CHECK(as_rep(res)->intervals.at("a") == as_rep(res)->intervals.at("b"));
  CHECK(as_rep(res)->intervals.at("a").center == Dyadic(0));

  auto p = catalog("3+1+1");  // twins u, v
  for (const char* s : {"AB", "CD", "BCD", "ABCD"}) {
    CAPTURE(s);
    auto r = recognize(p, TypeSet::parse(s));
    REQUIRE(as_rep(r) != nullptr);
    CHECK(as_rep(r)->intervals.at("u") == as_rep(r)->intervals.at("v"));
    CHECK(validate(*as_rep(r), p, TypeSet::parse(s)).ok);
  }

  auto d = catalog("D");  // twins y, w
  auto r = recognize(d, TypeSet::parse("ACD"));
  REQUIRE(as_rep(r) != nullptr);
  CHECK(as_rep(r)->intervals.at("y") == as_rep(r)->intervals.at("w"));
}

TEST_CASE("blocks concatenate two apart") {
  auto chain = Poset::from_relations({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  RecognizeTrace tr;
  auto res = recognize(chain, TypeSet::parse("A"), &tr);
  const auto* rep = as_rep(res);
  REQUIRE(rep != nullptr);
  CHECK(tr.blocks == 3);
  CHECK(rep->intervals.at("a").center == Dyadic(0));
  CHECK(rep->intervals.at("b").center == Dyadic(2));
  CHECK(rep->intervals.at("c").center == Dyadic(4));
}

TEST_CASE("multi-pass run with dyadic bases") {
  // x below z and w, y below z only: nothing is pinned, so each pass fixes
  // one element at a freshly offset base.
  auto p = Poset::from_relations({"x", "y", "z", "w"}, {{"x", "z"}, {"x", "w"}, {"y", "z"}});
  RecognizeTrace tr;
  auto res = recognize(p, TypeSet::parse("A"), &tr);
  const auto* rep = as_rep(res);
  REQUIRE(rep != nullptr);
  CHECK(tr.blocks == 1);
  CHECK(tr.passes == 4);
  CHECK_FALSE(tr.late_pass_failure);
  CHECK(rep->intervals.at("x").center == Dyadic(0));
  CHECK(rep->intervals.at("y").center == Dyadic::from_parts(1, 1));   // 1/2
  CHECK(rep->intervals.at("z").center == Dyadic::from_parts(7, 2));   // 7/4
  CHECK(rep->intervals.at("w").center == Dyadic::from_parts(9, 3));   // 9/8
  CHECK(tr.fixed_in.at("x") == std::pair<int, int>(0, 0));
  CHECK(tr.fixed_in.at("y") == std::pair<int, int>(0, 1));
  CHECK(tr.fixed_in.at("z") == std::pair<int, int>(0, 2));
  CHECK(tr.fixed_in.at("w") == std::pair<int, int>(0, 3));
  CHECK(validate(*rep, p, TypeSet::parse("A")).ok);
}

TEST_CASE("soundness across the small census") {
  for (int n = 1; n <= 5; ++n)
    for (const auto& p : enumerate_posets(n))
      for (auto s : TypeSet::all_nonempty()) {
        CAPTURE(n, p.strict_pairs(), s.str());
        auto res = recognize(p, s);
        if (const auto* rep = as_rep(res)) {
          REQUIRE(validate(*rep, p, s).ok);
        } else {
          REQUIRE(verify_certificate(p, *as_cert(res)));
        }
      }
}

TEST_CASE("elements fixed in different passes are type independent") {
  auto check_one = [](const Poset& p, TypeSet s) {
    RecognizeTrace tr;
    auto res = recognize(p, s, &tr);
    const auto* rep = as_rep(res);
    if (!rep) return;
    CHECK_FALSE(tr.late_pass_failure);
    for (int i = 0; i < p.size(); ++i)
      for (int j = i + 1; j < p.size(); ++j) {
        const auto& a = p.name(i);
        const auto& b = p.name(j);
        if (tr.fixed_in.at(a) == tr.fixed_in.at(b)) continue;
        CAPTURE(a, b, s.str());
        REQUIRE(type_independent(a, b, rep->intervals.at(a).center, rep->intervals.at(b).center,
                                 p));
      }
  };
  for (int n = 1; n <= 5; ++n)
    for (const auto& p : enumerate_posets(n))
      for (auto s : TypeSet::all_nonempty()) check_one(p, s);
  std::mt19937 rng(2027);
  for (int t = 0; t < 150; ++t)
    check_one(random_poset(rng, 6 + t % 4, 0.1 + 0.08 * (t % 8)), TypeSet::all_nonempty()[t % 15]);
}

TEST_CASE("random refusals all carry verifying certificates") {
  std::mt19937 rng(5150);
  int refusals = 0;
  for (int t = 0; t < 400; ++t) {
    auto p = random_poset(rng, 4 + t % 6, 0.12 + 0.09 * (t % 7));
    auto s = TypeSet::all_nonempty()[t % 15];
    auto res = recognize(p, s);
    if (const auto* cert = as_cert(res)) {
      ++refusals;
      CAPTURE(t, s.str());
      REQUIRE(verify_certificate(p, *cert));
    }
  }
  CHECK(refusals > 40);  // the sweep hit real refusals, both kinds arise at these densities
}
