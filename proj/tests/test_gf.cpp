#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linkenh/gf.hpp"

using linkenh::GaloisField;

TEST_CASE("gf256 multiplication basics") {
    const auto& gf = GaloisField::gf256();
    CHECK(gf.mul(0, 0x57) == 0);
    CHECK(gf.mul(1, 0x57) == 0x57);
    CHECK(gf.mul(2, 2) == 4); // x * x = x^2, no reduction needed
}

TEST_CASE("gf256 multiplication agrees with carryless long multiplication") {
    const auto& gf = GaloisField::gf256();
    // independent oracle: shift-and-xor with reduction by 0x11D
    auto slow_mul = [](unsigned a, unsigned b) {
        unsigned acc = 0;
        for (int i = 0; i < 8; ++i)
            if (b & (1u << i)) acc ^= a << i;
        for (int i = 14; i >= 8; --i)
            if (acc & (1u << i)) acc ^= 0x11Du << (i - 8);
        return acc;
    };
    for (unsigned a = 0; a < 256; a += 7)
        for (unsigned b = 0; b < 256; ++b)
            CHECK(gf.mul(a, b) == slow_mul(a, b));
}

TEST_CASE("field axioms on gf256") {
    const auto& gf = GaloisField::gf256();
    for (unsigned a = 1; a < 256; ++a) {
        CHECK(gf.add(a, a) == 0);           // addition self-inverse
        CHECK(gf.mul(a, gf.inv(a)) == 1);
        CHECK(gf.div(a, a) == 1);
    }
    // alpha generates the full multiplicative group
    CHECK(gf.pow_alpha(0) == 1);
    CHECK(gf.pow_alpha(255) == 1);
    CHECK(gf.pow_alpha(1) == 2);
}

TEST_CASE("gf16 field for the toy code") {
    GaloisField gf(4, 0x13); // x^4 + x + 1
    CHECK(gf.size() == 16);
    for (unsigned a = 1; a < 16; ++a) CHECK(gf.mul(a, gf.inv(a)) == 1);
    CHECK(gf.pow_alpha(15) == 1);
}

TEST_CASE("non-primitive polynomial rejected") {
    // 0x11B (the AES polynomial) is irreducible but alpha = 2 has order 51
    CHECK_THROWS(GaloisField(8, 0x11B));
}
