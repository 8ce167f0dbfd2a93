#include <doctest.h>

#include <random>

#include "bowlab/algebra.hpp"

using namespace bowlab;

namespace {

SpacePtr small_space() {
    // u1,u2,u3, h, x1_1, x1_2, x2_1, eps
    return VarSpace::make(3, 0, {{1, 1}, {1, 2}, {2, 1}}, true);
}

LaurentPoly var(const SpacePtr& sp, int v) { return LaurentPoly::variable(sp, v); }

LaurentPoly upoly(const SpacePtr& sp, int i) { return var(sp, sp->u_index(i)); }

LaurentPoly random_poly(const SpacePtr& sp, std::mt19937& rng, int max_terms, int max_vars) {
    std::uniform_int_distribution<int> nt(0, max_terms);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> expd(-2, 2);
    std::uniform_int_distribution<int> pick(0, std::min(max_vars, sp->size() - 1) - 1);
    LaurentPoly p(sp);
    int terms = nt(rng);
    for (int t = 0; t < terms; ++t) {
        ExpVec e(sp->size(), 0);
        int nv = pick(rng) + 1;
        for (int k = 0; k < nv; ++k) e[pick(rng)] += expd(rng);
        p.add_term(e, Scalar(coeff(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("scalar arithmetic stays canonical") {
    Scalar a(1, 3), b(1, 6);
    CHECK((a + b) == Scalar(1, 2));
    CHECK((a - a).is_zero());
    CHECK(Scalar(-2, 4).str() == "-1/2");
    CHECK(Scalar::factorial(5) == Scalar(120));
    CHECK(Scalar(2, 3).pow(-2) == Scalar(9, 4));
    CHECK(Scalar::from_decimal_strings("10", "-4") == Scalar(-5, 2));
}

TEST_CASE("poly ops: additive inverse, Laurent inverse monomials, difference of squares") {
    auto sp = small_space();
    LaurentPoly u1 = upoly(sp, 1), u2 = upoly(sp, 2);
    LaurentPoly h = var(sp, sp->h_index());

    CHECK(((u1 - u2) + (u2 - u1)).is_zero());

    ExpVec e12(sp->size(), 0), e21(sp->size(), 0);
    e12[sp->u_index(1)] = 1;
    e12[sp->u_index(2)] = -1;
    e21[sp->u_index(1)] = -1;
    e21[sp->u_index(2)] = 1;
    LaurentPoly m1 = LaurentPoly::monomial(sp, e12, Scalar(1));
    LaurentPoly m2 = LaurentPoly::monomial(sp, e21, Scalar(1));
    CHECK(m1 * m2 == LaurentPoly::constant(sp, Scalar(1)));

    CHECK((u1 + h) * (u1 - h) == u1 * u1 - h * h);
}

TEST_CASE("poly ops reject mismatched spaces") {
    auto sp1 = small_space();
    auto sp2 = VarSpace::make(2, 0, {}, false);
    LaurentPoly a = upoly(sp1, 1);
    LaurentPoly b = upoly(sp2, 1);
    CHECK_THROWS_AS(a + b, UsageError);
}

TEST_CASE("ring axioms on random polynomials") {
    auto sp = small_space();
    std::mt19937 rng(20240801);
    for (int round = 0; round < 60; ++round) {
        LaurentPoly a = random_poly(sp, rng, 8, 6);
        LaurentPoly b = random_poly(sp, rng, 8, 6);
        LaurentPoly c = random_poly(sp, rng, 8, 6);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("substitution: shifted root, identity, K-theory reparametrization") {
    auto sp = small_space();
    int x11 = *sp->find_root(1, 1);
    LaurentPoly u1 = upoly(sp, 1), u2 = upoly(sp, 2);
    LaurentPoly h = var(sp, sp->h_index());

    // x11 -> u2 - h applied to (u1 - x11 + h) gives (u1 - u2 + 2h)
    LaurentPoly p = u1 - var(sp, x11) + h;
    std::map<int, LaurentPoly> assign{{x11, u2 - h}};
    CHECK(p.substitute(assign) == u1 - u2 + h + h);

    CHECK(p.substitute({}) == p);

    // u1 -> u1*h into u1/u2 multiplies by h
    ExpVec e(sp->size(), 0);
    e[sp->u_index(1)] = 1;
    e[sp->u_index(2)] = -1;
    LaurentPoly mono = LaurentPoly::monomial(sp, e, Scalar(1));
    std::map<int, LaurentPoly> rep{{sp->u_index(1), u1 * h}};
    CHECK(mono.substitute(rep) == mono * h);

    // non-invertible substitution into a negative exponent errors
    std::map<int, LaurentPoly> bad{{sp->u_index(2), u1 + h}};
    CHECK_THROWS_AS(mono.substitute(bad), UsageError);
}

TEST_CASE("substitution composes when domains are disjoint") {
    auto sp = small_space();
    int x11 = *sp->find_root(1, 1);
    int x12 = *sp->find_root(1, 2);
    std::mt19937 rng(7);
    for (int round = 0; round < 20; ++round) {
        LaurentPoly p = random_poly(sp, rng, 6, 4);
        // keep p polynomial in the substituted vars
        LaurentPoly q(sp);
        for (const auto& [e, c] : p.terms()) {
            if (e[x11] >= 0 && e[x12] >= 0) q.add_term(e, c);
        }
        std::map<int, LaurentPoly> a{{x11, upoly(sp, 1) + var(sp, sp->h_index())}};
        std::map<int, LaurentPoly> b{{x12, upoly(sp, 2)}};
        std::map<int, LaurentPoly> both = a;
        both.insert(b.begin(), b.end());
        CHECK(q.substitute(a).substitute(b) == q.substitute(both));
    }
}

TEST_CASE("divides_linear: table entry, remainder, zero") {
    auto sp = small_space();
    LaurentPoly u1 = upoly(sp, 1), u2 = upoly(sp, 2), u3 = upoly(sp, 3);
    LaurentPoly h = var(sp, sp->h_index());

    LinearForm hform = LinearForm::variable(sp, sp->h_index());
    CHECK(divides_linear((u1 - u3) * h, hform));

    LinearForm f(sp);
    f.add_coeff(sp->u_index(1), Scalar(1));
    f.add_coeff(sp->u_index(2), Scalar(-1));
    f.add_coeff(sp->h_index(), Scalar(2));
    CHECK_FALSE(divides_linear((u2 - u3) * h, f));

    CHECK(divides_linear(LaurentPoly::zero(sp), f));
    CHECK_THROWS_AS(divides_linear(u1, LinearForm(sp)), UsageError);

    // quotient round trip
    LaurentPoly p = (u1 - u2 + h + h) * (u2 - u3 + h) * (u1 - u3);
    auto q = divide_exact_linear(p, f);
    REQUIRE(q.has_value());
    CHECK(*q * f.to_poly() == p);
}

TEST_CASE("factored rationals merge proportional factors") {
    auto sp = small_space();
    LinearForm f(sp), g(sp);
    f.add_coeff(sp->u_index(1), Scalar(1));
    f.add_coeff(sp->u_index(2), Scalar(-1));
    g.add_coeff(sp->u_index(1), Scalar(-2));
    g.add_coeff(sp->u_index(2), Scalar(2));
    FactoredRational r(sp);
    r.mul_form(f, 1);
    r.mul_form(g, -1);  // g = -2 f: cancels up to the scalar -1/2
    CHECK(r.factors().empty());
    CHECK(r.scalar() == Scalar(-1, 2));
}

TEST_CASE("symmetrize counts and trivial cases") {
    auto sp = small_space();
    int x11 = *sp->find_root(1, 1);
    int x12 = *sp->find_root(1, 2);
    int x21 = *sp->find_root(2, 1);
    FactoredRational expr(sp);
    LinearForm f(sp);
    f.add_coeff(x11, Scalar(1));
    f.add_coeff(x12, Scalar(-1));
    f.add_coeff(sp->h_index(), Scalar(1));
    expr.mul_form(f, 1);

    auto two = symmetrize(expr, {{x11, x12}});
    CHECK(two.size() == 2);
    // identity + swap: the swapped copy is (x12 - x11 + h)
    LaurentPoly sum(sp);
    for (const auto& s : two) sum += s.expand();
    CHECK(sum == var(sp, sp->h_index()).scaled(Scalar(2)));

    auto eight = symmetrize(expr, {{x11, x12}, {x21}, {}});
    CHECK(eight.size() == 2);

    auto one = symmetrize(expr, {{x11}, {x12}, {x21}});
    CHECK(one.size() == 1);
    CHECK(one[0] == expr);

    CHECK_THROWS_AS(symmetrize(expr, {{x11, x11}}), UsageError);
    CHECK_THROWS_AS(symmetrize(expr, {{sp->u_index(1)}}), UsageError);
}

TEST_CASE("symmetrize then expand equals expand then symmetrize") {
    auto sp = small_space();
    int x11 = *sp->find_root(1, 1);
    int x12 = *sp->find_root(1, 2);
    int x21 = *sp->find_root(2, 1);
    FactoredRational expr(sp);
    LinearForm f(sp), g(sp);
    f.add_coeff(x11, Scalar(1));
    f.add_coeff(x21, Scalar(-1));
    g.add_coeff(x12, Scalar(1));
    g.add_coeff(sp->h_index(), Scalar(3));
    expr.mul_form(f, 1);
    expr.mul_form(g, 2);

    std::vector<std::vector<int>> blocks{{x11, x12}, {x21}};
    LaurentPoly via_factored(sp);
    for (const auto& s : symmetrize(expr, blocks)) via_factored += s.expand();

    // brute force: permute variables inside the expanded polynomial
    LaurentPoly expanded = expr.expand();
    LaurentPoly brute(sp);
    for (int swap01 = 0; swap01 < 2; ++swap01) {
        LaurentPoly copy(sp);
        for (const auto& [e, c] : expanded.terms()) {
            ExpVec pe = e;
            if (swap01) std::swap(pe[x11], pe[x12]);
            copy.add_term(pe, c);
        }
        brute += copy;
    }
    CHECK(via_factored == brute);
}

TEST_CASE("limit_at_zero: exact cancellation and first order") {
    auto sp = small_space();
    int eps = sp->eps_index();
    LinearForm epsf = LinearForm::variable(sp, eps);

    FactoredRational a(sp), b(sp);
    a.mul_form(epsf, -1);
    b.set_scalar(Scalar(-1));
    b.mul_form(epsf, -1);
    LimitStats st;
    CHECK(limit_at_zero({a, b}, &st).is_zero());
    CHECK(st.pole_cancellation);

    // [(u1+eps)/eps, -u1/eps] -> 1
    LinearForm u1eps(sp);
    u1eps.add_coeff(sp->u_index(1), Scalar(1));
    u1eps.add_coeff(eps, Scalar(1));
    FactoredRational c(sp), d(sp);
    c.mul_form(u1eps, 1);
    c.mul_form(epsf, -1);
    d.set_scalar(Scalar(-1));
    d.mul_form(LinearForm::variable(sp, sp->u_index(1)), 1);
    d.mul_form(epsf, -1);
    CHECK(limit_at_zero({c, d}) == LaurentPoly::constant(sp, Scalar(1)));
}

TEST_CASE("limit_at_zero agrees with naive evaluation when regular") {
    auto sp = small_space();
    int eps = sp->eps_index();
    // (u1 - u2 + 3 eps)(u2 + eps) / (u1 + 5 eps) is regular at eps=0 but not
    // polynomial; wrap it with a matching denominator-free partner instead:
    // check a plain product evaluates by dropping eps terms
    LinearForm f(sp), g(sp);
    f.add_coeff(sp->u_index(1), Scalar(1));
    f.add_coeff(sp->u_index(2), Scalar(-1));
    f.add_coeff(eps, Scalar(3));
    g.add_coeff(sp->u_index(2), Scalar(1));
    g.add_coeff(eps, Scalar(1));
    FactoredRational r(sp);
    r.mul_form(f, 1);
    r.mul_form(g, 2);
    LaurentPoly lim = limit_at_zero({r});
    LinearForm f0 = f, g0 = g;
    f0.set_coeff(eps, Scalar(0));
    g0.set_coeff(eps, Scalar(0));
    CHECK(lim == f0.to_poly() * g0.to_poly() * g0.to_poly());
}

TEST_CASE("limit_at_zero failure modes surface") {
    auto sp = small_space();
    int eps = sp->eps_index();
    LinearForm epsf = LinearForm::variable(sp, eps);
    FactoredRational pole(sp);
    pole.mul_form(epsf, -1);
    CHECK_THROWS_AS(limit_at_zero({pole}), ConjectureFailure);

    // (u1 + eps)/eps - u2/eps has no limit: (u1-u2)/eps survives
    LinearForm u1eps(sp);
    u1eps.add_coeff(sp->u_index(1), Scalar(1));
    u1eps.add_coeff(eps, Scalar(1));
    FactoredRational a(sp), b(sp);
    a.mul_form(u1eps, 1);
    a.mul_form(epsf, -1);
    b.set_scalar(Scalar(-1));
    b.mul_form(LinearForm::variable(sp, sp->u_index(2)), 1);
    b.mul_form(epsf, -1);
    CHECK_THROWS_AS(limit_at_zero({a, b}), ConjectureFailure);

    // non-polynomial limit: u1/(u1 - u2)
    FactoredRational c(sp);
    LinearForm den(sp);
    den.add_coeff(sp->u_index(1), Scalar(1));
    den.add_coeff(sp->u_index(2), Scalar(-1));
    c.mul_form(LinearForm::variable(sp, sp->u_index(1)), 1);
    c.mul_form(den, -1);
    CHECK_THROWS_AS(limit_at_zero({c}), ConjectureFailure);
}

TEST_CASE("literal zero denominators are poles for limit_at_zero") {
    auto sp = small_space();
    FactoredRational r(sp);
    r.mul_form(LinearForm(sp), -2);  // substitute() would flag this the same way
    CHECK(r.pole_order() == 2);
    CHECK_THROWS_AS(limit_at_zero({r}), ConjectureFailure);
}

TEST_CASE("factored substitution: zero numerator factor zeroes the value") {
    auto sp = small_space();
    int x11 = *sp->find_root(1, 1);
    FactoredRational r(sp);
    LinearForm f(sp);
    f.add_coeff(x11, Scalar(1));
    f.add_coeff(sp->u_index(1), Scalar(-1));
    r.mul_form(f, 1);
    std::map<int, LinearForm> assign{{x11, LinearForm::variable(sp, sp->u_index(1))}};
    FactoredRational s = r.substitute(assign);
    CHECK(s.is_zero());
    CHECK(s.zero_numerator_order() == 1);
}

TEST_CASE("nth_prime") {
    CHECK(nth_prime(1) == 2);
    CHECK(nth_prime(5) == 11);
    CHECK(nth_prime(25) == 97);
}
