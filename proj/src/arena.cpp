#include "misere/arena.hpp"

#include <algorithm>
#include <string>

namespace misere {

namespace {

constexpr std::size_t kPoolChunk = std::size_t{1} << 20;
constexpr std::uint32_t kEmptySlot = 0xFFFFFFFFu;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  return h * 0xBF58476D1CE4E5B9ull;
}

}  // namespace

Arena::Arena() {
  table_.assign(1024, kEmptySlot);
  for (unsigned m = 0; m <= 4; ++m) nimber(m);
}

// ---------------------------------------------------------------------------
// Forms

const Arena::Entry& Arena::entry(GameId g) const { return entries_[g.value]; }
Arena::Entry& Arena::entry(GameId g) { return entries_[g.value]; }

void Arena::check(GameId g) const {
  if (!contains(g)) throw InvalidHandle("unknown game id " + std::to_string(g.value));
}

std::span<const GameId> Arena::options(GameId g) const {
  check(g);
  const Entry& e = entry(g);
  return {e.options, e.count};
}

int Arena::formal_birthday(GameId g) const {
  check(g);
  return entry(g).formal_birthday;
}

std::optional<unsigned> Arena::nimber_value(GameId g) const {
  check(g);
  const int m = entry(g).nimber;
  if (m < 0) return std::nullopt;
  return static_cast<unsigned>(m);
}

std::uint64_t Arena::hash_options(std::span<const GameId> sorted) const {
  std::uint64_t h = sorted.size();
  for (GameId o : sorted) h = mix(h, o.value);
  return h;
}

bool Arena::same_options(GameId id, std::span<const GameId> sorted) const {
  const Entry& e = entry(id);
  return e.count == sorted.size() && std::equal(sorted.begin(), sorted.end(), e.options);
}

void Arena::grow_table() {
  std::vector<std::uint32_t> bigger(table_.size() * 2, kEmptySlot);
  const std::size_t mask = bigger.size() - 1;
  for (std::uint32_t id : table_) {
    if (id == kEmptySlot) continue;
    const Entry& e = entries_[id];
    std::size_t slot = hash_options({e.options, e.count}) & mask;
    while (bigger[slot] != kEmptySlot) slot = (slot + 1) & mask;
    bigger[slot] = id;
  }
  table_.swap(bigger);
}

GameId Arena::intern(std::span<const GameId> options) {
  std::vector<GameId> sorted(options.begin(), options.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (GameId o : sorted) check(o);
  return intern_sorted(sorted);
}

GameId Arena::intern_sorted(std::span<const GameId> sorted) {
  const std::uint64_t h = hash_options(sorted);
  std::lock_guard lock(intern_mutex_);

  std::size_t mask = table_.size() - 1;
  std::size_t slot = h & mask;
  while (table_[slot] != kEmptySlot) {
    if (same_options(GameId{table_[slot]}, sorted)) return GameId{table_[slot]};
    slot = (slot + 1) & mask;
  }

  if (pool_capacity_ - pool_used_ < sorted.size() || pool_chunks_.empty()) {
    const std::size_t n = std::max(kPoolChunk, sorted.size());
    pool_chunks_.push_back(std::make_unique<GameId[]>(n));
    pool_used_ = 0;
    pool_capacity_ = n;
  }
  GameId* run = pool_chunks_.back().get() + pool_used_;
  std::copy(sorted.begin(), sorted.end(), run);
  pool_used_ += sorted.size();

  const auto id = static_cast<std::uint32_t>(entries_.size());
  if (id == kEmptySlot) throw CapacityError("arena capacity exhausted");
  Entry& e = entries_.prepare();
  e.options = run;
  e.count = static_cast<std::uint32_t>(sorted.size());
  int bd = 0;
  bool is_nimber = true;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Entry& oe = entries_[sorted[i].value];
    bd = std::max(bd, oe.formal_birthday + 1);
    if (oe.nimber != static_cast<int>(i)) is_nimber = false;
  }
  e.formal_birthday = bd;
  e.nimber = is_nimber ? static_cast<int>(sorted.size()) : -1;
  e.outcome.store(kUnknownOutcome, std::memory_order_relaxed);
  e.canonical.store(kNone, std::memory_order_relaxed);
  e.mate.store(kNone, std::memory_order_relaxed);
  e.concubine.store(kNone, std::memory_order_relaxed);
  entries_.publish();

  table_[slot] = id;
  if (entries_.size() * 2 > table_.size()) grow_table();
  return GameId{id};
}

GameId Arena::nimber(unsigned m) {
  {
    std::lock_guard lock(nimber_mutex_);
    if (m < nimbers_.size()) return nimbers_[m];
  }
  std::vector<GameId> built;
  {
    std::lock_guard lock(nimber_mutex_);
    built = nimbers_;
  }
  // Nimbers are canonical.
  while (built.size() <= m) {
    const GameId g = intern_sorted(built);
    entry(g).canonical.store(g.value, std::memory_order_release);
    built.push_back(g);
  }
  std::lock_guard lock(nimber_mutex_);
  if (built.size() > nimbers_.size()) nimbers_ = built;
  return nimbers_[m];
}

// ---------------------------------------------------------------------------
// Values

Outcome Arena::outcome(GameId g) {
  check(g);
  Entry& e = entry(g);
  const std::uint8_t cached = e.outcome.load(std::memory_order_acquire);
  if (cached != kUnknownOutcome) return static_cast<Outcome>(cached);
  Outcome o = Outcome::P;
  if (e.count == 0) {
    o = Outcome::N;
  } else {
    for (std::uint32_t i = 0; i < e.count; ++i) {
      if (outcome(e.options[i]) == Outcome::P) {
        o = Outcome::N;
        break;
      }
    }
  }
  e.outcome.store(static_cast<std::uint8_t>(o), std::memory_order_release);
  return o;
}

std::optional<GameId> Arena::known_canonical(GameId g) const {
  const std::uint32_t c = entry(g).canonical.load(std::memory_order_acquire);
  if (c == kNone) return std::nullopt;
  return GameId{c};
}

// G = H iff G is linked to no H', no G' is linked to H, and the proviso
// holds in both directions. Forms with known simplest forms short-circuit.
bool Arena::same_value(GameId a, GameId b) {
  if (a == b) return true;
  const auto ca = known_canonical(a);
  const auto cb = known_canonical(b);
  if (ca && cb) return *ca == *cb;

  const std::uint64_t key = pair_key(a, b);
  if (auto hit = equal_memo_.find(key)) return *hit != 0;

  bool result = true;
  const Entry& ea = entry(a);
  const Entry& eb = entry(b);
  if (ea.count == 0 && outcome(b) != Outcome::N) result = false;
  if (result && eb.count == 0 && outcome(a) != Outcome::N) result = false;
  for (std::uint32_t i = 0; result && i < eb.count; ++i) {
    if (linked_forms(a, eb.options[i])) result = false;
  }
  for (std::uint32_t i = 0; result && i < ea.count; ++i) {
    if (linked_forms(ea.options[i], b)) result = false;
  }
  equal_memo_.insert(key, result ? 1u : 0u);
  return result;
}

// G is linked to H iff no H' equals G and no G' equals H.
bool Arena::linked_forms(GameId a, GameId b) {
  const Entry& ea = entry(a);
  const Entry& eb = entry(b);
  for (std::uint32_t i = 0; i < eb.count; ++i) {
    if (same_value(a, eb.options[i])) return false;
  }
  for (std::uint32_t i = 0; i < ea.count; ++i) {
    if (same_value(ea.options[i], b)) return false;
  }
  return true;
}

bool Arena::linked(GameId g, GameId h) {
  check(g);
  check(h);
  const GameId cg = canonicalize(g);
  const GameId ch = canonicalize(h);
  for (GameId ho : options(h)) {
    if (canonicalize(ho) == cg) return false;
  }
  for (GameId go : options(g)) {
    if (canonicalize(go) == ch) return false;
  }
  return true;
}

bool Arena::equals(GameId g, GameId h) {
  check(g);
  check(h);
  return canonicalize(g) == canonicalize(h);
}

GameId Arena::canonicalize(GameId g) {
  check(g);
  if (auto c = known_canonical(g)) return *c;

  std::vector<GameId> opts;
  opts.reserve(entry(g).count);
  for (GameId o : options(g)) opts.push_back(canonicalize(o));
  std::sort(opts.begin(), opts.end());
  opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
  const GameId form = intern_sorted(opts);

  GameId result = form;
  if (auto c = known_canonical(form)) {
    result = *c;
  } else {
    // Every option of `form` is canonical, so it is reducible exactly when
    // some grandchild equals it, and that grandchild is its simplest form.
    bool found = false;
    for (GameId o : options(form)) {
      for (GameId k : options(o)) {
        if (same_value(k, form)) {
          result = k;
          found = true;
          break;
        }
      }
      if (found) break;
    }
    entry(form).canonical.store(result.value, std::memory_order_release);
  }
  entry(g).canonical.store(result.value, std::memory_order_release);
  return result;
}

std::optional<GameId> Arena::mex_reduce(GameId g) {
  check(g);
  std::vector<unsigned> values;
  for (GameId o : options(g)) {
    auto v = nimber_value(o);
    if (!v) return std::nullopt;
    values.push_back(*v);
  }
  if (std::none_of(values.begin(), values.end(), [](unsigned v) { return v <= 1; })) return std::nullopt;
  std::sort(values.begin(), values.end());
  unsigned mex = 0;
  for (unsigned v : values) {
    if (v == mex) ++mex;
    else if (v > mex) break;
  }
  return nimber(mex);
}

GameId Arena::sum(GameId g, GameId h) {
  const GameId a = canonicalize(g);
  const GameId b = canonicalize(h);
  if (a == kZero) return b;
  if (b == kZero) return a;
  const std::uint64_t key = pair_key(a, b);
  if (auto hit = sum_memo_.find(key)) return GameId{*hit};

  std::vector<GameId> opts;
  for (GameId ao : options(a)) opts.push_back(sum(ao, b));
  for (GameId bo : options(b)) opts.push_back(sum(a, bo));
  const GameId result = canonicalize(intern(opts));
  return GameId{sum_memo_.insert(key, result.value)};
}

GameId Arena::form_sum(GameId g, GameId h) {
  check(g);
  check(h);
  if (g == kZero) return h;
  if (h == kZero) return g;
  const std::uint64_t key = pair_key(g, h);
  if (auto hit = form_sum_memo_.find(key)) return GameId{*hit};

  std::vector<GameId> opts;
  for (GameId go : options(g)) opts.push_back(form_sum(go, h));
  for (GameId ho : options(h)) opts.push_back(form_sum(g, ho));
  const GameId result = intern(opts);
  return GameId{form_sum_memo_.insert(key, result.value)};
}

GameId Arena::multiple(GameId g, unsigned n) {
  GameId acc = kZero;
  const GameId c = canonicalize(g);
  for (unsigned i = 0; i < n; ++i) acc = sum(acc, c);
  return acc;
}

GameId Arena::mate(GameId g) {
  check(g);
  Entry& e = entry(g);
  const std::uint32_t cached = e.mate.load(std::memory_order_acquire);
  if (cached != kNone) return GameId{cached};
  GameId result;
  if (e.count == 0) {
    result = nimber(1);
  } else {
    std::vector<GameId> opts;
    for (GameId o : options(g)) opts.push_back(mate(o));
    result = intern(opts);
  }
  e.mate.store(result.value, std::memory_order_release);
  return result;
}

GameId Arena::concubine(GameId g) {
  const GameId c = canonicalize(g);
  Entry& e = entry(c);
  const std::uint32_t cached = e.concubine.load(std::memory_order_acquire);
  if (cached != kNone) return GameId{cached};
  GameId result;
  if (c == kZero) {
    const GameId two_sharp_sharp = sharp(sharp(nimber(2)));
    result = sharp(intern({two_sharp_sharp, nimber(1)}));
  } else {
    std::vector<GameId> opts;
    for (GameId o : options(c)) opts.push_back(concubine(o));
    result = intern(opts);
  }
  e.concubine.store(result.value, std::memory_order_release);
  return result;
}

Parity Arena::parity(GameId g) {
  const GameId c = canonicalize(g);
  const GameId next = sum(c, nimber(1));
  const auto opts = options(next);
  return std::binary_search(opts.begin(), opts.end(), c) ? Parity::Even : Parity::Odd;
}

// ---------------------------------------------------------------------------
// Deterministic ordering

int Arena::structural_compare(GameId a, GameId b) const {
  if (a == b) return 0;
  const int ba = formal_birthday(a);
  const int bb = formal_birthday(b);
  if (ba != bb) return ba < bb ? -1 : 1;
  const auto oa = sorted_options(a);
  const auto ob = sorted_options(b);
  const std::size_t n = std::min(oa.size(), ob.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = structural_compare(oa[i], ob[i]);
    if (c != 0) return c;
  }
  if (oa.size() != ob.size()) return oa.size() < ob.size() ? -1 : 1;
  return 0;
}

bool Arena::structural_less(GameId a, GameId b) const { return structural_compare(a, b) < 0; }

std::vector<GameId> Arena::sorted_options(GameId g) const {
  const auto opts = options(g);
  std::vector<GameId> v(opts.begin(), opts.end());
  std::sort(v.begin(), v.end(), [this](GameId x, GameId y) { return structural_compare(x, y) < 0; });
  return v;
}

}  // namespace misere
