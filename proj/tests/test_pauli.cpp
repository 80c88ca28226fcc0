#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "lsurg/pauli.hpp"
#include "lsurg/rng.hpp"

using lsurg::PauliString;
using lsurg::Rng;

namespace {

PauliString random_pauli(int n, Rng& rng, bool hermitian = true) {
  PauliString p(n);
  for (int q = 0; q < n; ++q) p.set_letter(q, "IXYZ"[rng.below(4)]);
  p.set_phase(hermitian ? 2 * static_cast<int>(rng.below(2))
                        : static_cast<int>(rng.below(4)));
  return p;
}

}  // namespace

TEST_CASE("single-qubit product table with exact phases") {
  // Expected results of L*R for every letter pair, as (letters, i-exponent).
  struct Row { char l, r, out; int phase; };
  const Row table[] = {
      {'I', 'I', 'I', 0}, {'I', 'X', 'X', 0}, {'I', 'Y', 'Y', 0},
      {'I', 'Z', 'Z', 0}, {'X', 'I', 'X', 0}, {'X', 'X', 'I', 0},
      {'X', 'Y', 'Z', 1}, {'X', 'Z', 'Y', 3}, {'Y', 'I', 'Y', 0},
      {'Y', 'X', 'Z', 3}, {'Y', 'Y', 'I', 0}, {'Y', 'Z', 'X', 1},
      {'Z', 'I', 'Z', 0}, {'Z', 'X', 'Y', 1}, {'Z', 'Y', 'X', 3},
      {'Z', 'Z', 'I', 0},
  };
  for (const auto& row : table) {
    CAPTURE(row.l);
    CAPTURE(row.r);
    PauliString a = PauliString::single(1, 0, 'X');
    a.set_letter(0, row.l);
    PauliString b(1);
    b.set_letter(0, row.r);
    const PauliString c = a * b;
    CHECK(c.letter(0) == row.out);
    CHECK(c.phase() == row.phase);
  }
}

TEST_CASE("parse and str round-trip") {
  for (const std::string s :
       {"+XIZY", "-ZZ", "iY", "-iX", "+IIII", "-YYXZ"}) {
    const PauliString p = PauliString::parse(s);
    std::string want = s;
    if (want[0] != '+' && want[0] != '-' && want[0] != 'i') want = "+" + want;
    CHECK(p.str() == want);
  }
  const PauliString p = PauliString::parse("XX");
  CHECK(p.str() == "+XX");
  CHECK(p.sign() == 1);
  CHECK(PauliString::parse("-ZZ").sign() == -1);
}

TEST_CASE("weight, support, identity") {
  const PauliString p = PauliString::parse("XIZYI");
  CHECK(p.weight() == 3);
  CHECK(p.support() == std::vector<int>{0, 2, 3});
  CHECK_FALSE(p.is_identity());
  CHECK(PauliString(5).is_identity());
  PauliString m(3);
  m.flip_sign();
  CHECK(m.is_identity());  // phase is ignored
  CHECK(m.sign() == -1);
}

TEST_CASE("commutation") {
  auto comm = [](const char* a, const char* b) {
    return PauliString::parse(a).commutes(PauliString::parse(b));
  };
  CHECK(comm("X", "X"));
  CHECK_FALSE(comm("X", "Z"));
  CHECK_FALSE(comm("X", "Y"));
  CHECK(comm("XX", "ZZ"));
  CHECK_FALSE(comm("XI", "ZZ"));
  CHECK(comm("XXXX", "ZZII"));
  CHECK(comm("IZZI", "ZZII"));
  CHECK(comm("XYZ", "ZZZ"));        // two anticommuting pairs cancel
  CHECK_FALSE(comm("XIZ", "ZZZ"));  // only the q0 pair anticommutes
}

TEST_CASE("conjugation by H and S") {
  struct Row { char in, out; int sign; };
  const Row h_table[] = {
      {'I', 'I', 1}, {'X', 'Z', 1}, {'Y', 'Y', -1}, {'Z', 'X', 1}};
  for (const auto& row : h_table) {
    PauliString p(1);
    p.set_letter(0, row.in);
    p.conj_h(0);
    CHECK(p.letter(0) == row.out);
    CHECK(p.sign() == row.sign);
  }
  const Row s_table[] = {
      {'I', 'I', 1}, {'X', 'Y', 1}, {'Y', 'X', -1}, {'Z', 'Z', 1}};
  for (const auto& row : s_table) {
    PauliString p(1);
    p.set_letter(0, row.in);
    p.conj_s(0);
    CHECK(p.letter(0) == row.out);
    CHECK(p.sign() == row.sign);
  }
}

TEST_CASE("conjugation by CNOT, all 16 letter pairs") {
  struct Row { const char* in; const char* out; };
  // control is qubit 0, target qubit 1
  const Row table[] = {
      {"II", "+II"}, {"IX", "+IX"}, {"IY", "+ZY"}, {"IZ", "+ZZ"},
      {"XI", "+XX"}, {"XX", "+XI"}, {"XY", "+YZ"}, {"XZ", "-YY"},
      {"YI", "+YX"}, {"YX", "+YI"}, {"YY", "-XZ"}, {"YZ", "+XY"},
      {"ZI", "+ZI"}, {"ZX", "+ZX"}, {"ZY", "+IY"}, {"ZZ", "+IZ"},
  };
  for (const auto& row : table) {
    CAPTURE(row.in);
    PauliString p = PauliString::parse(row.in);
    p.conj_cnot(0, 1);
    CHECK(p.str() == row.out);
  }
}

TEST_CASE("conjugation by CZ and SWAP") {
  struct Row { const char* in; const char* out; };
  const Row cz_table[] = {
      {"XI", "+XZ"}, {"IX", "+ZX"}, {"XX", "+YY"}, {"XY", "-YX"},
      {"YX", "-XY"}, {"YY", "+XX"}, {"ZI", "+ZI"}, {"ZZ", "+ZZ"},
      {"XZ", "+XI"}, {"ZX", "+IX"},
  };
  for (const auto& row : cz_table) {
    CAPTURE(row.in);
    PauliString p = PauliString::parse(row.in);
    p.conj_cz(0, 1);
    CHECK(p.str() == row.out);
  }
  PauliString p = PauliString::parse("-XZY");
  p.conj_swap(0, 2);
  CHECK(p.str() == "-YZX");
  p.conj_swap(0, 2);
  CHECK(p.str() == "-XZY");
}

TEST_CASE("conjugation by X and Z flips anticommuting signs") {
  PauliString p = PauliString::parse("Z");
  p.conj_x(0);
  CHECK(p.sign() == -1);
  p = PauliString::parse("Y");
  p.conj_x(0);
  CHECK(p.sign() == -1);
  p = PauliString::parse("X");
  p.conj_x(0);
  CHECK(p.sign() == 1);
  p = PauliString::parse("X");
  p.conj_z(0);
  CHECK(p.sign() == -1);
  p = PauliString::parse("Z");
  p.conj_z(0);
  CHECK(p.sign() == 1);
}

TEST_CASE("product properties on random operators") {
  Rng rng(0xA11CE);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(70));  // crosses word edge
    const PauliString p = random_pauli(n, rng, false);
    const PauliString q = random_pauli(n, rng, false);
    const PauliString r = random_pauli(n, rng, false);
    CHECK((p * q) * r == p * (q * r));
    // PQ = (-1)^{anticommute} QP
    PauliString qp = q * p;
    if (!p.commutes(q)) qp.set_phase(qp.phase() + 2);
    CHECK(p * q == qp);
    // Hermitian operators square to +identity exactly.
    PauliString h = random_pauli(n, rng, true);
    const PauliString h2 = h * h;
    CHECK(h2.is_identity());
    CHECK(h2.phase() == 0);
  }
}

TEST_CASE("conjugation involutions and Hermiticity preservation") {
  Rng rng(0xB0B);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(8));
    PauliString p = random_pauli(n, rng, true);
    const PauliString orig = p;
    const int a = static_cast<int>(rng.below(n));
    int b = static_cast<int>(rng.below(n));
    if (b == a) b = (a + 1) % n;

    p.conj_h(a);
    CHECK(p.is_hermitian());
    p.conj_h(a);
    CHECK(p == orig);

    p.conj_s(a);
    p.conj_s(a);
    p.conj_s(a);
    p.conj_s(a);
    CHECK(p == orig);

    p.conj_cnot(a, b);
    CHECK(p.is_hermitian());
    p.conj_cnot(a, b);
    CHECK(p == orig);

    p.conj_cz(a, b);
    p.conj_cz(a, b);
    CHECK(p == orig);
  }
}

TEST_CASE("conjugation is a product homomorphism") {
  // U(PQ)Udg == (UPUdg)(UQUdg) for each generator, including phases.
  Rng rng(0xC0FFEE);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(6));
    const PauliString p = random_pauli(n, rng, false);
    const PauliString q = random_pauli(n, rng, false);
    const int a = static_cast<int>(rng.below(n));
    int b = static_cast<int>(rng.below(n));
    if (b == a) b = (a + 1) % n;
    const int which = static_cast<int>(rng.below(4));
    auto apply = [&](PauliString& s) {
      switch (which) {
        case 0: s.conj_h(a); break;
        case 1: s.conj_s(a); break;
        case 2: s.conj_cnot(a, b); break;
        default: s.conj_cz(a, b); break;
      }
    };
    PauliString pq = p * q;
    apply(pq);
    PauliString pc = p, qc = q;
    apply(pc);
    apply(qc);
    CHECK(pq == pc * qc);
  }
}
