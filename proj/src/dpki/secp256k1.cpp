// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#include "dpki/secp256k1.hpp"

#include <gmpxx.h>

#include "dpki/errors.hpp"
#include "dpki/keccak.hpp"

namespace dpki::secp {

namespace {

mpz_class from_be(std::span<const Byte> data) {
    mpz_class v;
    mpz_import(v.get_mpz_t(), data.size(), 1, 1, 1, 0, data.data());
    return v;
}

void to_be32(const mpz_class& v, Byte* out) {
    std::fill(out, out + 32, Byte{0});
    std::size_t count = 0;
    // Export writes only the significant bytes; right-align them.
    unsigned char tmp[32];
    mpz_export(tmp, &count, 1, 1, 1, 0, v.get_mpz_t());
    std::copy(tmp, tmp + count, out + (32 - count));
}

struct Affine {
    mpz_class x, y;
    bool inf = true;
};

// Jacobian coordinates; Z == 0 encodes the point at infinity.
struct Jacobian {
    mpz_class X, Y, Z;
};

struct Ctx {
    mpz_class p, n, half_n;
    Affine g;
    std::array<Affine, 16> g_table;  // g_table[i] = i*G, index 0 unused

    Ctx() {
        p = mpz_class("fffffffffffffffffffffffffffffffffffffffffffffffffffffffefffffc2f", 16);
        n = mpz_class("fffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141", 16);
        half_n = n >> 1;
        g.x = mpz_class("79be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798", 16);
        g.y = mpz_class("483ada7726a3c4655da4fbfc0e1108a8fd17b448a68554199c47d08ffb10d4b8", 16);
        g.inf = false;

        // Small multiples of G in affine form, computed with plain
        // chord-tangent arithmetic. One-time cost; enables mixed additions
        // in every fixed-base multiplication afterwards.
        auto inv = [this](const mpz_class& v) {
            mpz_class r;
            if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0)
                throw CryptoError("modular inverse of non-invertible element");
            return r;
        };
        auto red = [this](const mpz_class& v) {
            mpz_class r;
            mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
            return r;
        };
        auto add = [&](const Affine& a, const Affine& b) {
            if (a.inf) return b;
            if (b.inf) return a;
            mpz_class lambda;
            if (a.x == b.x) {
                if (a.y != b.y) return Affine{};
                lambda = red(3 * a.x * a.x * inv(red(2 * a.y)));
            } else {
                lambda = red((b.y - a.y) * inv(red(b.x - a.x)));
            }
            Affine out;
            out.x = red(lambda * lambda - a.x - b.x);
            out.y = red(lambda * (a.x - out.x) - a.y);
            out.inf = false;
            return out;
        };
        g_table[0] = Affine{};
        g_table[1] = g;
        for (int i = 2; i < 16; ++i) g_table[i] = add(g_table[i - 1], g);
    }
};

const Ctx& ctx();

mpz_class mod_p(const mpz_class& v) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), ctx().p.get_mpz_t());
    return r;
}

mpz_class mod_inv(const mpz_class& v, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t()) == 0)
        throw CryptoError("modular inverse of non-invertible element");
    return r;
}

Jacobian to_jacobian(const Affine& a) {
    if (a.inf) return {0, 1, 0};
    return {a.x, a.y, 1};
}

Affine to_affine(const Jacobian& j) {
    Affine out;
    if (j.Z == 0) return out;
    mpz_class zi = mod_inv(j.Z, ctx().p);
    mpz_class zi2 = mod_p(zi * zi);
    out.x = mod_p(j.X * zi2);
    out.y = mod_p(j.Y * zi2 * zi);
    out.inf = false;
    return out;
}

Jacobian jac_double(const Jacobian& a) {
    if (a.Z == 0 || a.Y == 0) return {0, 1, 0};
    mpz_class A = mod_p(a.X * a.X);
    mpz_class B = mod_p(a.Y * a.Y);
    mpz_class C = mod_p(B * B);
    mpz_class t = a.X + B;
    mpz_class D = mod_p(2 * (mod_p(t * t) - A - C));
    mpz_class E = mod_p(3 * A);
    mpz_class X3 = mod_p(E * E - 2 * D);
    mpz_class Y3 = mod_p(E * (D - X3) - 8 * C);
    mpz_class Z3 = mod_p(2 * a.Y * a.Z);
    return {X3, Y3, Z3};
}

Jacobian jac_add(const Jacobian& a, const Jacobian& b) {
    if (a.Z == 0) return b;
    if (b.Z == 0) return a;
    mpz_class Z1Z1 = mod_p(a.Z * a.Z);
    mpz_class Z2Z2 = mod_p(b.Z * b.Z);
    mpz_class U1 = mod_p(a.X * Z2Z2);
    mpz_class U2 = mod_p(b.X * Z1Z1);
    mpz_class S1 = mod_p(a.Y * b.Z * Z2Z2);
    mpz_class S2 = mod_p(b.Y * a.Z * Z1Z1);
    mpz_class H = mod_p(U2 - U1);
    mpz_class R = mod_p(S2 - S1);
    if (H == 0) {
        if (R == 0) return jac_double(a);
        return {0, 1, 0};
    }
    mpz_class H2 = mod_p(H * H);
    mpz_class H3 = mod_p(H * H2);
    mpz_class U1H2 = mod_p(U1 * H2);
    mpz_class X3 = mod_p(R * R - H3 - 2 * U1H2);
    mpz_class Y3 = mod_p(R * (U1H2 - X3) - S1 * H3);
    mpz_class Z3 = mod_p(a.Z * b.Z * H);
    return {X3, Y3, Z3};
}

// Mixed addition with an affine second operand (Z == 1), saving two field
// squarings per add.
Jacobian jac_add_affine(const Jacobian& a, const Affine& b) {
    if (b.inf) return a;
    if (a.Z == 0) return to_jacobian(b);
    mpz_class Z1Z1 = mod_p(a.Z * a.Z);
    mpz_class U2 = mod_p(b.x * Z1Z1);
    mpz_class S2 = mod_p(b.y * a.Z * Z1Z1);
    mpz_class H = mod_p(U2 - a.X);
    mpz_class R = mod_p(S2 - a.Y);
    if (H == 0) {
        if (R == 0) return jac_double(a);
        return {0, 1, 0};
    }
    mpz_class H2 = mod_p(H * H);
    mpz_class H3 = mod_p(H * H2);
    mpz_class U1H2 = mod_p(a.X * H2);
    mpz_class X3 = mod_p(R * R - H3 - 2 * U1H2);
    mpz_class Y3 = mod_p(R * (U1H2 - X3) - a.Y * H3);
    mpz_class Z3 = mod_p(a.Z * H);
    return {X3, Y3, Z3};
}

const Ctx& ctx() {
    static const Ctx instance;
    return instance;
}

// Extracts the i-th 4-bit window (0 = most significant) from a 32-byte
// big-endian scalar.
int window_at(const std::array<Byte, 32>& scalar, int i) {
    Byte b = scalar[i / 2];
    return (i % 2 == 0) ? (b >> 4) : (b & 0x0f);
}

// Fixed-base multiplication using the precomputed affine table of G.
Jacobian mul_g(const std::array<Byte, 32>& scalar) {
    Jacobian acc{0, 1, 0};
    for (int w = 0; w < 64; ++w) {
        for (int k = 0; k < 4; ++k) acc = jac_double(acc);
        int digit = window_at(scalar, w);
        if (digit != 0) acc = jac_add_affine(acc, ctx().g_table[digit]);
    }
    return acc;
}

// Interleaved u1*G + u2*Q evaluation (Strauss trick): one shared doubling
// chain instead of two.
Jacobian mul_double(const std::array<Byte, 32>& u1, const Affine& q,
                    const std::array<Byte, 32>& u2) {
    std::array<Jacobian, 16> q_table;
    q_table[0] = {0, 1, 0};
    q_table[1] = to_jacobian(q);
    for (int i = 2; i < 16; ++i) q_table[i] = jac_add_affine(q_table[i - 1], q);
    Jacobian acc{0, 1, 0};
    for (int w = 0; w < 64; ++w) {
        for (int k = 0; k < 4; ++k) acc = jac_double(acc);
        int d1 = window_at(u1, w);
        if (d1 != 0) acc = jac_add_affine(acc, ctx().g_table[d1]);
        int d2 = window_at(u2, w);
        if (d2 != 0) acc = jac_add(acc, q_table[d2]);
    }
    return acc;
}

std::array<Byte, 32> scalar_bytes(const mpz_class& v) {
    std::array<Byte, 32> out{};
    to_be32(v, out.data());
    return out;
}

bool on_curve(const mpz_class& x, const mpz_class& y) {
    if (x < 0 || x >= ctx().p || y < 0 || y >= ctx().p) return false;
    mpz_class lhs = mod_p(y * y);
    mpz_class rhs = mod_p(x * x * x + 7);
    return lhs == rhs;
}

Affine parse_public(const PublicKey& key) {
    if (key.bytes[0] != 0x04) throw CryptoError("public key must be uncompressed");
    Affine pt;
    pt.x = from_be({key.bytes.data() + 1, 32});
    pt.y = from_be({key.bytes.data() + 33, 32});
    pt.inf = false;
    if (!on_curve(pt.x, pt.y)) throw CryptoError("public key not on curve");
    return pt;
}

PublicKey encode_public(const Affine& pt) {
    PublicKey out;
    out.bytes[0] = 0x04;
    to_be32(pt.x, out.bytes.data() + 1);
    to_be32(pt.y, out.bytes.data() + 33);
    return out;
}

// Deterministic nonce: hash the key, digest and a retry counter until the
// result lands in [1, n-1]. Keyed entirely by the inputs, so signing is a
// pure function.
mpz_class derive_nonce(const PrivateKey& key, const Hash256& digest, unsigned attempt) {
    for (unsigned counter = attempt; counter < attempt + 256; ++counter) {
        Bytes material;
        material.insert(material.end(), key.bytes.begin(), key.bytes.end());
        material.insert(material.end(), digest.bytes.begin(), digest.bytes.end());
        material.push_back(static_cast<Byte>(counter));
        Hash256 h = keccak256(material);
        mpz_class k = from_be(h.bytes);
        if (k > 0 && k < ctx().n) return k;
    }
    throw CryptoError("nonce derivation failed");  // unreachable in practice
}

}  // namespace

bool scalar_valid(const PrivateKey& key) {
    mpz_class d = from_be(key.bytes);
    return d > 0 && d < ctx().n;
}

PublicKey derive_public(const PrivateKey& key) {
    if (!scalar_valid(key)) throw CryptoError("private key out of range");
    Jacobian point = mul_g(key.bytes);
    return encode_public(to_affine(point));
}

bool valid_public(const PublicKey& key) {
    try {
        parse_public(key);
        return true;
    } catch (const CryptoError&) {
        return false;
    }
}

Signature sign(const PrivateKey& key, const Hash256& digest) {
    if (!scalar_valid(key)) throw CryptoError("private key out of range");
    const Ctx& c = ctx();
    mpz_class d = from_be(key.bytes);
    mpz_class e;
    mpz_mod(e.get_mpz_t(), from_be(digest.bytes).get_mpz_t(), c.n.get_mpz_t());

    for (unsigned attempt = 0; attempt < 64; ++attempt) {
        mpz_class k = derive_nonce(key, digest, attempt);
        Affine R = to_affine(mul_g(scalar_bytes(k)));
        if (R.inf) continue;
        mpz_class r;
        mpz_mod(r.get_mpz_t(), R.x.get_mpz_t(), c.n.get_mpz_t());
        if (r == 0) continue;
        mpz_class k_inv = mod_inv(k, c.n);
        mpz_class s;
        mpz_mod(s.get_mpz_t(), mpz_class(k_inv * (e + r * d)).get_mpz_t(), c.n.get_mpz_t());
        if (s == 0) continue;
        if (s > c.half_n) s = c.n - s;
        Signature out;
        to_be32(r, out.bytes.data());
        to_be32(s, out.bytes.data() + 32);
        return out;
    }
    throw CryptoError("signing failed to produce a valid nonce");
}

bool verify(const PublicKey& key, const Hash256& digest, const Signature& sig) {
    const Ctx& c = ctx();
    Affine q;
    try {
        q = parse_public(key);
    } catch (const CryptoError&) {
        return false;
    }
    mpz_class r = from_be({sig.bytes.data(), 32});
    mpz_class s = from_be({sig.bytes.data() + 32, 32});
    if (r <= 0 || r >= c.n || s <= 0 || s >= c.n) return false;
    mpz_class e;
    mpz_mod(e.get_mpz_t(), from_be(digest.bytes).get_mpz_t(), c.n.get_mpz_t());
    mpz_class w = mod_inv(s, c.n);
    mpz_class u1, u2;
    mpz_mod(u1.get_mpz_t(), mpz_class(e * w).get_mpz_t(), c.n.get_mpz_t());
    mpz_mod(u2.get_mpz_t(), mpz_class(r * w).get_mpz_t(), c.n.get_mpz_t());
    Affine R = to_affine(mul_double(scalar_bytes(u1), q, scalar_bytes(u2)));
    if (R.inf) return false;
    mpz_class v;
    mpz_mod(v.get_mpz_t(), R.x.get_mpz_t(), c.n.get_mpz_t());
    return v == r;
}

}  // namespace dpki::secp
