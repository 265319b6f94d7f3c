#include <cowaist/graded_class.hpp>

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace cowaist;

namespace
{

Universe chern_symbols(int K)
{
    std::vector<Generator> g;
    for (int i = 1; i <= K; ++i) {
        g.push_back({"ch" + std::to_string(i), i});
    }
    return make_universe(g);
}

GradedClass random_class(std::mt19937_64 &rng, const Universe &u, int N)
{
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> ex(0, 2);
    GradedClass x(u, N);
    for (int t = 0; t < 6; ++t) {
        Monomial m{0, std::vector<unsigned>(u->size(), 0)};
        for (std::size_t i = 0; i < u->size(); ++i) {
            m.exps[i] = static_cast<unsigned>(ex(rng));
            m.weight += static_cast<int>(m.exps[i]) * (*u)[i].weight;
        }
        x.add_term(m, Rational(num(rng), den(rng)));
    }
    return x;
}

} // namespace

TEST(Rational, CanonicalText)
{
    EXPECT_EQ(to_string(Rational(4)), "4");
    EXPECT_EQ(to_string(Rational(-2, 16)), "-1/8");
    EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
    EXPECT_EQ(parse_rational("+7"), Rational(7));
    EXPECT_THROW(parse_rational("1/0"), usage_error);
    EXPECT_THROW(parse_rational("1/-2"), usage_error);
    EXPECT_THROW(parse_rational("x"), usage_error);
    EXPECT_THROW(parse_rational(""), usage_error);
}

TEST(Rational, AlwaysReduced)
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-60, 60);
    for (int t = 0; t < 200; ++t) {
        const int a = d(rng);
        const int b = (d(rng) + 61) | 1;
        const Rational q = Rational(a, b) * Rational(b + 2, 6) - Rational(1, 3);
        const BigInt g = boost::multiprecision::gcd(abs(numerator_of(q)), denominator_of(q));
        EXPECT_EQ(g, 1);
        EXPECT_GT(denominator_of(q), 0);
    }
}

TEST(GradedClass, AdditionExamples)
{
    const Universe u = chern_symbols(2);
    const GradedClass c1 = GradedClass::generator(u, 2, "ch1");
    EXPECT_TRUE(gc_add(c1, -c1).is_zero());
    const GradedClass one = GradedClass::constant(u, 2, 1);
    EXPECT_EQ(gc_add(one + c1, c1).to_string(), "1 + 2*ch1");
}

TEST(GradedClass, MismatchedTruncationIsUsageError)
{
    const Universe u = chern_symbols(2);
    EXPECT_THROW(gc_add(GradedClass(u, 1), GradedClass(u, 2)), usage_error);
    EXPECT_THROW(gc_mul(GradedClass(u, 1), GradedClass(u, 2)), usage_error);
    EXPECT_THROW(gc_add(GradedClass(u, 1), GradedClass(chern_symbols(3), 1)), usage_error);
}

TEST(GradedClass, MultiplicationExamples)
{
    const Universe u = chern_symbols(1);
    const GradedClass x = GradedClass::generator(u, 1, "ch1");
    EXPECT_EQ(gc_mul(x, GradedClass::constant(u, 1, 1)), x);
    EXPECT_TRUE(gc_mul(x, x).is_zero());

    // (1 - p1/24)^2 at N = 2; p1 has weight 2.
    const Universe p = make_universe({{"p1", 2}});
    const GradedClass a = GradedClass::constant(p, 2, 1) - GradedClass::generator(p, 2, "p1") * Rational(1, 24);
    const GradedClass sq = gc_mul(a, a);
    EXPECT_EQ(sq.to_string(), "1 - 1/12*p1");
    // Hand expansion keeps p1^2/576 once the truncation admits weight 4.
    const GradedClass a4 = a.retruncated(4);
    EXPECT_EQ(gc_mul(a4, a4).to_string(), "1 - 1/12*p1 + 1/576*p1^2");
}

TEST(GradedClass, ComponentExamples)
{
    const Universe u = chern_symbols(2);
    const GradedClass c1 = GradedClass::generator(u, 2, "ch1");
    const GradedClass c2 = GradedClass::generator(u, 2, "ch2");
    const GradedClass x = GradedClass::constant(u, 2, 1) + c1 + c2;
    EXPECT_EQ(gc_component(x, 2), c2);
    EXPECT_THROW(gc_component(x, 3), usage_error);
    EXPECT_THROW(gc_component(x, -1), usage_error);

    // exp of a weight-1 generator: the weight-3 part is x^3/6.
    const Universe t = make_universe({{"x", 1}});
    const GradedClass e = exp_nilpotent(GradedClass::generator(t, 5, "x"));
    EXPECT_EQ(gc_component(e, 3).to_string(), "1/6*x^3");
    Rational f = 1;
    for (int w = 0; w <= 5; ++w) {
        EXPECT_EQ(e.coefficient(w == 0 ? std::string("1") : "x^" + std::to_string(w)), 1 / f);
        f *= w + 1;
    }
}

TEST(GradedClass, RingLawsOnRandomTriples)
{
    std::mt19937_64 rng(11);
    const Universe u = make_universe({{"a", 1}, {"b", 2}, {"c", 1}});
    for (int t = 0; t < 50; ++t) {
        const GradedClass x = random_class(rng, u, 5);
        const GradedClass y = random_class(rng, u, 5);
        const GradedClass z = random_class(rng, u, 5);
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ(x + y, y + x);
    }
}

TEST(GradedClass, TruncationCoherence)
{
    std::mt19937_64 rng(12);
    const Universe u = make_universe({{"a", 1}, {"b", 2}});
    for (int t = 0; t < 30; ++t) {
        const GradedClass x = random_class(rng, u, 6);
        const GradedClass y = random_class(rng, u, 6);
        for (int n = 0; n <= 6; ++n) {
            EXPECT_EQ(x.truncated(n) * y.truncated(n), (x * y).truncated(n));
        }
    }
}

TEST(GradedClass, ComponentsSumToWhole)
{
    std::mt19937_64 rng(13);
    const Universe u = make_universe({{"a", 1}, {"b", 2}});
    for (int t = 0; t < 20; ++t) {
        const GradedClass x = random_class(rng, u, 5);
        GradedClass sum(u, 5);
        for (int w = 0; w <= 5; ++w) {
            sum += gc_component(x, w);
        }
        EXPECT_EQ(sum, x);
    }
}

TEST(GradedClass, NoStoredZerosOrOverweightTerms)
{
    const Universe u = make_universe({{"a", 1}});
    GradedClass x(u, 2);
    const Monomial a3{3, {3}};
    x.add_term(a3, 5);
    x.add_term(Monomial{1, {1}}, 0);
    EXPECT_TRUE(x.is_zero());
    x.add_term(Monomial{1, {1}}, 2);
    x.add_term(Monomial{1, {1}}, -2);
    EXPECT_EQ(x.size(), 0u);
}

TEST(GradedClass, LogExpInverse)
{
    std::mt19937_64 rng(14);
    const Universe u = make_universe({{"a", 1}, {"b", 2}});
    for (int t = 0; t < 10; ++t) {
        GradedClass x = random_class(rng, u, 5);
        x -= x.component(0);
        EXPECT_EQ(log_one_plus(exp_nilpotent(x) - GradedClass::constant(u, 5, 1)), x);
    }
}

TEST(Partition, CountsAndValidation)
{
    const std::vector<std::size_t> p{0, 1, 2, 3, 5, 7, 11, 15};
    for (int K = 1; K < static_cast<int>(p.size()); ++K) {
        EXPECT_EQ(partitions_of(K).size(), p[static_cast<std::size_t>(K)]);
        for (const auto &part : partitions_of(K)) {
            EXPECT_EQ(part.sum(), K);
        }
    }
    EXPECT_THROW(Partition({}), usage_error);
    EXPECT_THROW(Partition({2, 0}), usage_error);
}

TEST(Monomial, RenderAndParse)
{
    const Universe u = make_universe({{"x1", 1}, {"p1", 2}});
    GradedClass g(u, 4);
    const Monomial m = g.parse_monomial("x1^2*p1");
    EXPECT_EQ(m.weight, 4);
    EXPECT_EQ(g.render_monomial(m), "p1*x1^2");
    EXPECT_THROW(g.parse_monomial("q"), usage_error);
    EXPECT_THROW(g.parse_monomial("x1^"), usage_error);
}
