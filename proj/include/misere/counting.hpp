#pragma once

#include <functional>
#include <map>
#include <utility>

#include "misere/census.hpp"
#include "misere/tower.hpp"

namespace misere {

/// Symbolic counts of games born by day n, from the recurrences
///
///   |M_n|     = 2^|M_{n-1}| - sum over G in M_{n-2} of |R_n^G|
///   |R_n^G|   = 2^|S_{n-1}^G| - 1,   or 2^|S_{n-1}^0| - 2^|N_{n-1}^0| for G = 0
///   |S_n^K|   = 2^(|M_{n-1}|-1) - sum over G in K of |R_n^{G,K}|
///                                - sum over G in S_{n-2}^K of |R_n^G|
///   |R_n^G,K| = 2^(|S_{n-1}^G|-1), less 2^(|N_{n-1}^0|-1) if G = 0 and K is N
///   |N_n|     = 2^|M_{n-1}| - 2^|N_{n-1}| + 1 - sum over G in N_{n-2} of |R_n^G|
///   |N_n^0|   = 2^(|M_{n-1}|-1) - 2^(|N_{n-1}|-1) - sum over G in N_{n-2}^0 of |R_n^G|
///
/// grounded in a census of day b. Quantities for days up to b are read off
/// the census as integers; later days are built as towers. Games are named
/// by their ordinals in the base census. Not safe for concurrent use.
class Recurrences {
 public:
  explicit Recurrences(const Census& base);

  int base_day() const { return base_.day(); }

  /// |M_n| for n <= b + 2. Not normalized.
  Tower m(int n);
  /// |R_n^G| for G born by day n - 2, n <= b + 2.
  Tower r(int n, std::size_t g);
  /// |R_n^{G,K}| for G an option of K, K born by day n - 1, n <= b + 1.
  Tower rk(int n, std::size_t g, std::size_t k);
  /// |S_n^K| for K born by day n - 1, n <= b + 1.
  Tower s(int n, std::size_t k);
  /// |N_n| and |N_n^0| for n <= b + 2.
  Tower nn(int n);
  Tower nn0(int n);

  /// |M_{b+2}| accumulated one base member at a time: the subtracted terms
  /// 2^|S_{b+1}^G| are normalized and merged as they are produced, so the
  /// full unreduced expression is never held in memory. The result equals
  /// m(b + 2).normalized(); for bases before day 5 it is computed that way.
  /// `progress`, if given, is called with the number of members processed
  /// so far.
  Tower m_streaming(const std::function<void(std::size_t)>& progress = {});

 private:
  void require(bool ok, const std::string& what) const;
  std::size_t s_direct(int n, std::size_t k) const;

  const Census& base_;
  std::map<std::pair<int, std::size_t>, Tower> s_memo_;
  std::map<int, Tower> m_memo_;
  std::map<int, Tower> nn_memo_;
  std::map<int, Tower> nn0_memo_;
};

}  // namespace misere
