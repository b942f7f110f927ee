// Stretch target: the expression for the number of games born by day 7.

#include <bit>
#include <chrono>
#include <iostream>
#include <string>

#include "misere/census.hpp"
#include "misere/counting.hpp"
#include "support/reference_data.hpp"

using namespace misere;
using namespace misere::testing;

int main() {
  const auto start = std::chrono::steady_clock::now();
  const Census c5 = Census::enumerate(5);
  Recurrences rec(c5);
  const Tower m7 = rec.m_streaming();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool pass = true;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      std::cout << "  mismatch: " << what << '\n';
    }
  };

  const auto& terms = m7.terms();
  const std::size_t subtracted = m7.term_count(-1);
  std::size_t multiplicity = 0;
  for (const TowerTerm& t : terms) {
    if (t.sign < 0) multiplicity += t.multiplicity;
  }
  expect(subtracted == kDay7SubtractedTerms, "subtracted terms " + std::to_string(subtracted));
  expect(multiplicity == c5.size(), "subtracted terms before combining " + std::to_string(multiplicity));
  expect(m7.constant() == kDay7Constant, "constant " + m7.constant().str());
  expect(terms.size() == subtracted + 2, "two added terms");

  if (terms.size() >= 6) {
    expect(terms[0].sign > 0 && terms[0].exponent.render() == kDay6Expression, "head term");
    // The reference listing shows each exponent once; a term m * 2^e with m = 2^j may
    // appear either as 2^e or folded into 2^(e + j).
    for (std::size_t i = 0; i < 3; ++i) {
      const TowerTerm& t = terms[i + 1];
      bool shown = t.exponent.render() == kDay7FirstSubtracted[i];
      if ((t.multiplicity & (t.multiplicity - 1)) == 0) {
        const long long j = std::countr_zero(t.multiplicity);
        shown = shown || (t.exponent + Tower(j)).normalized().render() == kDay7FirstSubtracted[i];
      }
      expect(t.sign < 0 && shown, "early term " + std::to_string(i + 1) + ": " + std::to_string(t.multiplicity) +
                                      " * 2^(" + t.exponent.render() + ")");
      std::cout << "  early term " << i + 1 << ": " << t.multiplicity << " * 2^(" << t.exponent.render() << ")\n";
    }
    const TowerTerm& last = terms[terms.size() - 2];
    expect(last.sign < 0 && last.exponent.render() == kDay7LastSubtracted, "final subtracted term");
    const TowerTerm& proviso = terms.back();
    expect(proviso.sign > 0 && proviso.exponent.render() == kDay7Proviso, "proviso term");
  }

  std::cout << "criterion 9 (games born by day 7): " << (pass ? "PASS" : "FAIL") << " - " << subtracted
            << " subtracted terms (" << multiplicity << " before combining), constant " << m7.constant() << " ["
            << secs << " s]" << std::endl;
  return pass ? 0 : 1;
}
