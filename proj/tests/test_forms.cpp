#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "xpat/forms.hpp"

using namespace xpat;

TEST_CASE("evaluate") {
    CHECK(evaluate(LinearForm(2, 1), 0) == 1);
    CHECK(evaluate(LinearForm(5, 2), 7) == 37);
    CHECK(evaluate(LinearForm(133, 1695), 0) == 1695);
    CHECK_THROWS_AS(LinearForm(0, 1), Error);
    CHECK_THROWS_AS(LinearForm(-2, 1), Error);
}

TEST_CASE("content_and_reduce") {
    auto r1 = content_and_reduce(LinearForm(2, 4));
    CHECK(r1.content == 2);
    CHECK(r1.reduced == LinearForm(1, 2));

    auto r2 = content_and_reduce(LinearForm(3, 1));
    CHECK(r2.content == 1);
    CHECK(r2.reduced == LinearForm(3, 1));

    // b = 0: content is the slope
    auto r3 = content_and_reduce(LinearForm(6, 0));
    CHECK(r3.content == 6);
    CHECK(r3.reduced == LinearForm(1, 0));

    // negative constants reduce through |b|
    auto r4 = content_and_reduce(LinearForm(4, -6));
    CHECK(r4.content == 2);
    CHECK(r4.reduced == LinearForm(2, -3));
}

TEST_CASE("substitute_divide worked values") {
    // K1 = L~1(4m+n2)/2 = 2m+n2 at n2=1
    CHECK(substitute_divide(LinearForm(1, 1), 4, 1, 2) == LinearForm(2, 1));
    // identity substitution
    CHECK(substitute_divide(LinearForm(7, 3), 1, 0, 1) == LinearForm(7, 3));
    // J1 = M1(15m-4n)/15 = 4m-n at n=3
    CHECK(substitute_divide(LinearForm(4, 3), 15, -12, 15) == LinearForm(4, -3));
    // non-exact division names the offending coefficient
    CHECK_THROWS_WITH_AS(substitute_divide(LinearForm(2, 1), 1, 0, 4),
                         doctest::Contains("slope"), Error);
    CHECK_THROWS_WITH_AS(substitute_divide(LinearForm(2, 1), 2, 0, 4),
                         doctest::Contains("constant"), Error);
}

TEST_CASE("substitute_divide identity holds on random valid inputs") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<long> small(1, 12), off(-20, 20);
    int done = 0;
    while (done < 1000) {
        LinearForm L(Int(small(rng)), Int(off(rng)));
        Int d(small(rng));
        Int r = d * small(rng); // make d | a*r
        Int x(off(rng));
        if (!divides(d, L.a * x + L.b)) continue;
        ++done;
        LinearForm K = substitute_divide(L, r, x, d);
        for (int s = 0; s < 10; ++s) {
            Int m(off(rng));
            CHECK(d * K(m) == L(r * m + x));
        }
    }
}

TEST_CASE("determinant") {
    CHECK(determinant(LinearForm(2, 1), LinearForm(3, 1)) == 1);
    CHECK(determinant(LinearForm(1, 2), LinearForm(3, 4)) == 2);
    CHECK(determinant(LinearForm(3, 4), LinearForm(1, 2)) == 2);
    CHECK(determinant(LinearForm(5, -3), LinearForm(5, -3)) == 0);
}

TEST_CASE("p_admissible worked values") {
    std::vector<LinearForm> t1 = {LinearForm(1, 0), LinearForm(1, 4), LinearForm(1, 10)};
    auto r1 = p_admissible(t1, 3);
    REQUIRE(r1.has_value());
    CHECK(*r1 == 1);

    std::vector<LinearForm> t2 = {LinearForm(1, 0), LinearForm(1, 1)};
    CHECK_FALSE(p_admissible(t2, 2).has_value());

    std::vector<LinearForm> t3 = {LinearForm(2, 1), LinearForm(3, 1), LinearForm(5, 2)};
    CHECK_FALSE(p_admissible(t3, 2).has_value());
}

TEST_CASE("admissible worked values") {
    std::vector<LinearForm> t1 = {LinearForm(1, 2), LinearForm(3, 4), LinearForm(5, 8)};
    auto c1 = admissible(t1);
    REQUIRE(c1.has_value());
    CHECK(c1->witnesses.at(2) == 1);
    CHECK(c1->witnesses.at(3) == 0);
    CHECK(check_certificate(t1, *c1));

    std::vector<LinearForm> t2 = {LinearForm(1, 0), LinearForm(1, 4), LinearForm(1, 10)};
    auto c2 = admissible(t2);
    REQUIRE(c2.has_value());
    CHECK(c2->witnesses.at(2) == 1);
    CHECK(c2->witnesses.at(3) == 1);

    // first form not reduced
    std::vector<LinearForm> t3 = {LinearForm(2, 4), LinearForm(1, 1)};
    CHECK_FALSE(admissible(t3).has_value());

    // consecutive forms cover mod 2
    std::vector<LinearForm> t4 = {LinearForm(1, 0), LinearForm(1, 1)};
    CHECK_FALSE(admissible(t4).has_value());
}

TEST_CASE("k-bounded shortcut equals brute force over p <= 101") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<long> adist(1, 50), bdist(-50, 50), kdist(1, 5);
    int done = 0;
    while (done < 300) {
        std::vector<LinearForm> forms;
        int k = static_cast<int>(kdist(rng));
        bool reduced_ok = true;
        for (int i = 0; i < k; ++i) {
            LinearForm L(Int(adist(rng)), Int(bdist(rng)));
            if (!L.reduced()) {
                reduced_ok = false;
                break;
            }
            forms.push_back(L);
        }
        if (!reduced_ok) continue;
        ++done;
        bool shortcut = admissible(forms).has_value();
        bool brute = oracle::admissible_brute(forms);
        CHECK(shortcut == brute);
    }
}

TEST_CASE("form text round trip") {
    CHECK(LinearForm::parse("3*m+1") == LinearForm(3, 1));
    CHECK(LinearForm::parse("4*m-3") == LinearForm(4, -3));
    CHECK(LinearForm::parse("1*m+0") == LinearForm(1, 0));
    CHECK(LinearForm(133, 1695).str() == "133*m+1695");
    CHECK(LinearForm(4, -3).str() == "4*m-3");
    CHECK(LinearForm::parse(LinearForm(17, -280).str()) == LinearForm(17, -280));
    auto forms = parse_forms("2*m+1;3*m+1;5*m+2");
    REQUIRE(forms.size() == 3);
    CHECK(forms[2] == LinearForm(5, 2));
    CHECK(format_forms(forms) == "2*m+1;3*m+1;5*m+2");
    CHECK_THROWS_AS(LinearForm::parse("m+1"), Error);
    CHECK_THROWS_AS(LinearForm::parse("0*m+1"), Error);
    CHECK_THROWS_AS(parse_forms("2*m+1;;3*m+1"), Error);
}
