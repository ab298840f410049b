#include "catch_amalgamated.hpp"

#include <cmath>

#include "upb/basis.hpp"
#include "upb/catalog.hpp"
#include "upb/uom.hpp"

using namespace upb;
using Catch::Matchers::WithinAbs;

namespace {

SymbolicUOM from_text(std::vector<std::vector<std::string>> text) {
  SymbolicUOM u;
  for (auto& r : text) {
    std::vector<Symbol> row;
    for (auto& s : r) row.push_back(parse_symbol(s));
    u.rows.push_back(row);
  }
  return u;
}

}  // namespace

TEST_CASE("symbol parsing and printing", "[uom]") {
  REQUIRE(parse_symbol("0") == Symbol{'0', false});
  REQUIRE(parse_symbol("1") == Symbol{'1', false});
  REQUIRE(parse_symbol("a") == Symbol{'a', false});
  REQUIRE(parse_symbol("d'") == Symbol{'d', true});
  REQUIRE(symbol_str(Symbol{'c', true}) == "c'");
  REQUIRE(symbol_str(Symbol{'1', false}) == "1");

  REQUIRE_THROWS_AS(parse_symbol(""), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_symbol("e"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_symbol("0'"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_symbol("1'"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_symbol("ab"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_symbol("a''"), std::invalid_argument);
}

TEST_CASE("angle lookup", "[uom]") {
  const AngleAssignment an{0.3, 0.7, 1.1, 0.4};
  REQUIRE(an.of('a') == 0.3);
  REQUIRE(an.of('b') == 0.7);
  REQUIRE(an.of('c') == 1.1);
  REQUIRE(an.of('d') == 0.4);
  REQUIRE_THROWS_AS(an.of('e'), std::invalid_argument);
}

TEST_CASE("instantiation maps symbols to kets", "[uom]") {
  const AngleAssignment an = generic_angles();
  const SymbolicUOM u = from_text({{"0", "1", "a", "b'"},
                                   {"1", "0", "a'", "b"}});
  const ProductBasis basis = instantiate(u, an);

  REQUIRE(basis.layout.dims == std::vector<int>{2, 2, 2, 2});
  const auto& m0 = basis.members[0].components;
  REQUIRE_THAT(std::abs(m0[0](0) - 1.0), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(std::abs(m0[1](1) - 1.0), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(std::abs(m0[2](0) - std::cos(0.3)), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(std::abs(m0[2](1) - std::sin(0.3)), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(std::abs(m0[3](0) - std::sin(0.7)), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(std::abs(m0[3](1) + std::cos(0.7)), WithinAbs(0.0, 1e-14));

  SECTION("primed and unprimed kets are orthogonal") {
    const auto& m1 = basis.members[1].components;
    REQUIRE_THAT(std::abs(m0[2].dot(m1[2])), WithinAbs(0.0, 1e-14));
    REQUIRE_THAT(std::abs(m0[3].dot(m1[3])), WithinAbs(0.0, 1e-14));
  }

  SECTION("non-orthogonal rows are rejected") {
    const SymbolicUOM bad = from_text({{"a", "0"}, {"1", "0"}});
    REQUIRE_THROWS_AS(instantiate(bad, an), std::invalid_argument);
  }

  SECTION("all bundled matrices instantiate cleanly") {
    for (const std::string& name : builtin_names())
      REQUIRE_NOTHROW(instantiate(builtin(name).uom, an));
  }
}

TEST_CASE("transform steps", "[uom]") {
  const SymbolicUOM u = from_text({{"0", "a"},
                                   {"1", "a'"},
                                   {"a", "0"}});

  SECTION("row permutation") {
    const SymbolicUOM r =
        apply_transform(u, TransformStep::row_permutation({2, 0, 1}));
    REQUIRE(r.rows[0] == u.rows[2]);
    REQUIRE(r.rows[1] == u.rows[0]);
    REQUIRE(r.rows[2] == u.rows[1]);
    REQUIRE_THROWS_AS(
        apply_transform(u, TransformStep::row_permutation({0, 0, 1})),
        std::invalid_argument);
    REQUIRE_THROWS_AS(
        apply_transform(u, TransformStep::row_permutation({0, 1})),
        std::invalid_argument);
  }

  SECTION("column permutation") {
    const SymbolicUOM c =
        apply_transform(u, TransformStep::column_permutation({1, 0}));
    REQUIRE(c.rows[0][0] == parse_symbol("a"));
    REQUIRE(c.rows[0][1] == parse_symbol("0"));
    REQUIRE(c.rows[2][0] == parse_symbol("0"));
  }

  SECTION("pair swap on a letter") {
    const SymbolicUOM s =
        apply_transform(u, TransformStep::swap_pair(1, 'a'));
    REQUIRE(s.rows[0][1] == parse_symbol("a'"));
    REQUIRE(s.rows[1][1] == parse_symbol("a"));
    REQUIRE(s.rows[2][1] == parse_symbol("0"));
  }

  SECTION("pair swap on the computational pair") {
    const SymbolicUOM s =
        apply_transform(u, TransformStep::swap_pair(0, '0'));
    REQUIRE(s.rows[0][0] == parse_symbol("1"));
    REQUIRE(s.rows[1][0] == parse_symbol("0"));
    REQUIRE(s.rows[2][0] == parse_symbol("a"));
  }

  SECTION("relabeling exchanges the pairs") {
    const SymbolicUOM r =
        apply_transform(u, TransformStep::relabel(0, 'a'));
    REQUIRE(r.rows[0][0] == parse_symbol("a"));
    REQUIRE(r.rows[1][0] == parse_symbol("a'"));
    REQUIRE(r.rows[2][0] == parse_symbol("0"));
  }

  SECTION("step descriptions are readable") {
    REQUIRE(step_str(TransformStep::swap_pair(2, 'a')) ==
            "symbol_swap(col 2, a<->a')");
    REQUIRE(step_str(TransformStep::relabel(0, 'b')) ==
            "basis_relabel(col 0, 0<->b, 1<->b')");
  }
}

TEST_CASE("transforms preserve instantiated orthogonality", "[uom]") {
  const AngleAssignment an = generic_angles();
  const SymbolicUOM u = builtin("size9-11th").uom;

  for (const TransformStep& step :
       {TransformStep::swap_pair(0, 'a'), TransformStep::relabel(2, 'a'),
        TransformStep::column_permutation({3, 1, 0, 2}),
        TransformStep::row_permutation({8, 7, 6, 5, 4, 3, 2, 1, 0})}) {
    const SymbolicUOM t = apply_transform(u, step);
    const ProductBasis basis = instantiate(t, an);
    REQUIRE(check_pairwise_orthogonality(basis).orthogonal);
    REQUIRE(check_unextendible(basis).unextendible);
  }
}

TEST_CASE("worked equivalence chains", "[uom]") {
  const auto chains = transformation_chains();
  REQUIRE(chains.size() == 2);

  REQUIRE(verify_chain(chains[0]));
  REQUIRE(verify_chain(chains[1]));

  SECTION("first chain returns to its second matrix") {
    REQUIRE(chains[0].size() == 4);
    REQUIRE(same_symbols(chains[0][1].uom, chains[0][3].uom));
  }

  SECTION("second chain closes on its starting matrix") {
    REQUIRE(chains[1].size() == 6);
    REQUIRE(same_symbols(chains[1][0].uom, chains[1][5].uom));
    REQUIRE(same_symbols(chains[1][0].uom, builtin("size9-11th").uom));
  }

  SECTION("a corrupted step breaks verification") {
    auto broken = chains[0];
    broken[0].steps.push_back(TransformStep::swap_pair(0, '0'));
    REQUIRE_FALSE(verify_chain(broken));
  }
}

TEST_CASE("equivalence search", "[uom]") {
  const SymbolicUOM u = builtin("size9-11th").uom;

  SECTION("identical matrices need no steps") {
    const auto steps = equivalent(u, u);
    REQUIRE(steps.has_value());
    REQUIRE(steps->empty());
  }

  SECTION("a scrambled copy is recovered and the steps replay") {
    SymbolicUOM b = apply_transform(u, TransformStep::swap_pair(1, 'a'));
    b = apply_transform(b, TransformStep::column_permutation({2, 0, 1, 3}));
    b = apply_transform(
        b, TransformStep::row_permutation({3, 1, 4, 0, 2, 5, 8, 6, 7}));

    const auto steps = equivalent(u, b);
    REQUIRE(steps.has_value());
    SymbolicUOM replay = u;
    for (const TransformStep& s : *steps) replay = apply_transform(replay, s);
    REQUIRE(same_symbols(replay, b));
  }

  SECTION("a tiny budget gives up instead of answering") {
    const SymbolicUOM other = from_text({{"0", "0", "0", "0"},
                                         {"0", "1", "a", "a'"},
                                         {"0", "a'", "1", "a"},
                                         {"0", "a", "a'", "1"},
                                         {"1", "0", "0", "0"},
                                         {"1", "0", "1", "1"},
                                         {"1", "1", "0", "0"},
                                         {"1", "1", "1", "0"},
                                         {"1", "1", "1", "1"}});
    REQUIRE_FALSE(equivalent(u, other, 50).has_value());
  }

  SECTION("shape mismatches are rejected") {
    REQUIRE_THROWS_AS(equivalent(u, builtin("size6").uom),
                      std::invalid_argument);
  }
}

TEST_CASE("letter renaming", "[uom]") {
  const SymbolicUOM u = builtin("size9-11th").uom;
  const SymbolicUOM renamed = rename_letters(u, {'a', 'b', 'c', 'd'});

  REQUIRE(renamed.rows[8][0] == parse_symbol("a'"));
  REQUIRE(renamed.rows[8][1] == parse_symbol("b'"));
  REQUIRE(renamed.rows[8][2] == parse_symbol("c'"));
  REQUIRE(renamed.rows[8][3] == parse_symbol("d'"));
  REQUIRE(renamed.rows[0][2] == parse_symbol("1"));
  REQUIRE(renamed.rows[0][3] == parse_symbol("d"));

  SECTION("0/1 cells are untouched and primes survive") {
    for (int i = 0; i < u.size(); ++i)
      for (int j = 0; j < u.width(); ++j) {
        const Symbol before = u.rows[i][j];
        const Symbol after = renamed.rows[i][j];
        if (before.base == '0' || before.base == '1')
          REQUIRE(after == before);
        else
          REQUIRE(after.primed == before.primed);
      }
  }

  SECTION("columns mixing two letters are rejected") {
    REQUIRE_THROWS_AS(rename_letters(builtin("size6").uom,
                                     {'a', 'b', 'c', 'd'}),
                      std::invalid_argument);
  }
}
