#include "misere/census.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>

namespace misere {

namespace {

constexpr std::string_view kMagic = "MISERE-CENSUS";
constexpr std::string_view kVersion = "v1";

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

unsigned resolve_threads(unsigned threads) {
  if (threads == 0) threads = std::thread::hardware_concurrency();
  return std::max(1u, threads);
}

// Simplification data for one grandchild target K, as masks over the
// members of the previous day.
struct Target {
  std::uint32_t options;    // options of K
  std::uint32_t extras_ok;  // members having K as an option
  bool is_zero;
};

struct ChunkResult {
  std::vector<std::uint32_t> fresh;
  std::vector<std::uint64_t> reducible;
};

}  // namespace

// ---------------------------------------------------------------------------
// Enumeration

Census Census::enumerate(int day, unsigned threads) {
  if (day < 0) throw DomainError("day must be non-negative");
  if (day > kMaxDay) {
    throw CapacityError("census of day " + std::to_string(day) +
                        " is infeasible: it would require enumerating 2^4171780 subsets");
  }
  Census c = from_masks(0, {0u}, {1});
  while (c.day() < day) c = extend(c, threads);
  return c;
}

Census Census::extend(const Census& prev, unsigned threads) {
  const int day = prev.day() + 1;
  if (day > kMaxDay) {
    throw CapacityError("census of day " + std::to_string(day) + " is infeasible");
  }
  const std::size_t width = prev.size();
  const std::size_t older = prev.day() == 0 ? 0 : prev.born_by(prev.day() - 1);

  std::uint32_t p_mask = 0;
  for (std::size_t i = 0; i < width; ++i) {
    if (prev.outcome(i) == Outcome::P) p_mask |= 1u << i;
  }
  std::vector<Target> targets;
  for (std::size_t k = 0; k < older; ++k) {
    std::uint32_t having = 0;
    for (std::size_t h = 0; h < width; ++h) {
      if (prev.masks_[h] >> k & 1u) having |= 1u << h;
    }
    targets.push_back({prev.masks_[k], having, k == 0});
  }

  const std::uint64_t total = std::uint64_t{1} << width;
  const unsigned workers = resolve_threads(threads);
  const std::uint64_t chunks = std::min<std::uint64_t>(total, std::uint64_t{workers} * 16);
  std::vector<ChunkResult> results(chunks);

  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t lo = total * c / chunks;
    const std::uint64_t hi = total * (c + 1) / chunks;
    ChunkResult& out = results[c];
    out.reducible.assign(targets.size(), 0);
    for (std::uint64_t h64 = lo; h64 < hi; ++h64) {
      const auto h = static_cast<std::uint32_t>(h64);
      int hits = 0;
      for (std::size_t k = 0; k < targets.size(); ++k) {
        const Target& t = targets[k];
        if ((h & t.options) != t.options) continue;
        const std::uint32_t extra = h & ~t.options;
        if (extra == 0 || (extra & ~t.extras_ok) != 0) continue;
        if (t.is_zero && (h & p_mask) == 0) continue;
        ++out.reducible[k];
        ++hits;
      }
      if (hits > 1) throw ConsistencyError("subset simplifies to two distinct targets");
      if (hits == 0 && (older == width || (h >> older) != 0)) out.fresh.push_back(h);
    }
  };

  std::vector<std::thread> pool;
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) run_chunk(c);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<std::uint32_t> masks(prev.masks_.begin(), prev.masks_.end());
  std::vector<std::uint64_t> reducible(targets.size(), 0);
  std::size_t fresh_total = 0;
  for (const auto& r : results) fresh_total += r.fresh.size();
  masks.reserve(masks.size() + fresh_total);
  const auto fresh_begin = static_cast<std::ptrdiff_t>(masks.size());
  for (auto& r : results) {
    masks.insert(masks.end(), r.fresh.begin(), r.fresh.end());
    for (std::size_t k = 0; k < reducible.size(); ++k) reducible[k] += r.reducible[k];
  }
  std::sort(masks.begin() + fresh_begin, masks.end(), mask_less);

  std::vector<std::size_t> prefix = prev.prefix_;
  prefix.push_back(masks.size());
  Census c = from_masks(day, std::move(masks), std::move(prefix));
  c.reducible_ = std::move(reducible);
  return c;
}

Census Census::from_masks(int day, std::vector<std::uint32_t> masks, std::vector<std::size_t> prefix) {
  Census c;
  c.day_ = day;
  c.masks_ = std::move(masks);
  c.prefix_ = std::move(prefix);
  c.index();
  return c;
}

void Census::index() {
  flags_.assign(masks_.size(), 0);
  std::uint32_t p_bits = 0;
  n_count_ = 0;
  n0_count_ = 0;
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    const std::uint32_t m = masks_[i];
    const bool n = m == 0 || (m & p_bits) != 0;
    if (n) {
      flags_[i] |= kFlagN;
      ++n_count_;
      if (m & 1u) ++n0_count_;
    } else if (i < 32) {
      p_bits |= 1u << i;
    }
    if (m & 1u) flags_[i] |= kFlagZero;
  }
  const std::size_t width = day_ == 0 ? 0 : born_by(day_ - 1);
  s_counts_.assign(width, 0);
  for (std::uint32_t m : masks_) {
    for (std::uint32_t rest = m; rest != 0; rest &= rest - 1) ++s_counts_[std::countr_zero(rest)];
  }
}

bool Census::mask_less(std::uint32_t a, std::uint32_t b) {
  if (a == b) return false;
  const int d = std::countr_zero(a ^ b);
  if (a >> d & 1u) return (b >> d) != 0;
  return (a >> d) == 0;
}

// ---------------------------------------------------------------------------
// Queries

std::vector<std::size_t> Census::options(std::size_t i) const {
  if (i >= size()) throw InvalidHandle("census ordinal out of range");
  std::vector<std::size_t> out;
  for (std::uint32_t rest = masks_[i]; rest != 0; rest &= rest - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
  }
  return out;
}

int Census::birthday(std::size_t i) const {
  if (i >= size()) throw InvalidHandle("census ordinal out of range");
  return static_cast<int>(std::upper_bound(prefix_.begin(), prefix_.end(), i) - prefix_.begin());
}

std::size_t Census::s_count(std::size_t k) const {
  if (k >= s_counts_.size()) {
    throw DomainError("option index covers only members born by day " + std::to_string(day_ - 1));
  }
  return s_counts_[k];
}

GameId Census::materialize(Arena& arena, std::size_t i) const {
  if (i >= size()) throw InvalidHandle("census ordinal out of range");
  std::vector<GameId> opts;
  for (std::size_t o : options(i)) opts.push_back(materialize(arena, o));
  return arena.intern(opts);
}

std::vector<GameId> Census::materialize_prefix(Arena& arena, std::size_t count) const {
  count = std::min(count, size());
  std::vector<GameId> ids;
  ids.reserve(count);
  std::vector<GameId> opts;
  for (std::size_t i = 0; i < count; ++i) {
    opts.clear();
    for (std::uint32_t rest = masks_[i]; rest != 0; rest &= rest - 1) opts.push_back(ids[std::countr_zero(rest)]);
    ids.push_back(arena.intern(opts));
  }
  return ids;
}

std::optional<std::size_t> Census::find(Arena& arena, GameId g) const {
  const GameId c = arena.canonicalize(g);
  const int b = arena.formal_birthday(c);
  if (b > day_) return std::nullopt;
  std::uint32_t mask = 0;
  for (GameId o : arena.options(c)) {
    const auto ord = find(arena, o);
    if (!ord || *ord >= 32) return std::nullopt;
    mask |= 1u << *ord;
  }
  const auto lo = masks_.begin() + static_cast<std::ptrdiff_t>(b == 0 ? 0 : prefix_[b - 1]);
  const auto hi = masks_.begin() + static_cast<std::ptrdiff_t>(prefix_[b]);
  const auto it = std::lower_bound(lo, hi, mask, mask_less);
  if (it == hi || *it != mask) return std::nullopt;
  return static_cast<std::size_t>(it - masks_.begin());
}

// ---------------------------------------------------------------------------
// Persistence

void Census::save(const std::filesystem::path& path) const {
  std::string body;
  body.reserve(masks_.size() * 48);
  body += kMagic;
  body += ' ';
  body += kVersion;
  body += " day=" + std::to_string(day_) + " count=" + std::to_string(masks_.size()) + "\n";
  char buf[16];
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    body += std::to_string(i);
    body += ':';
    for (std::uint32_t rest = masks_[i]; rest != 0; rest &= rest - 1) {
      body += ' ';
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::countr_zero(rest));
      body.append(buf, end);
    }
    body += '\n';
  }
  const std::string footer = "sha256=" + sha256_hex(body) + "\n";

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  out.write(footer.data(), static_cast<std::streamsize>(footer.size()));
  if (!out) throw Error("write to " + path.string() + " failed");
}

namespace {

std::size_t parse_number(std::string_view text, const char* what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw MalformedFile(std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return v;
}

std::string_view field(std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key) throw MalformedFile("expected " + std::string(key) + " in header");
  return token.substr(key.size());
}

}  // namespace

Census Census::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedFile("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string data = ss.str();
  const std::string_view all(data);

  const auto header_end = all.find('\n');
  const std::string_view header = all.substr(0, header_end);
  std::vector<std::string_view> tokens;
  for (std::size_t pos = 0; pos < header.size();) {
    const auto next = std::min(header.find(' ', pos), header.size());
    if (next > pos) tokens.push_back(header.substr(pos, next - pos));
    pos = next + 1;
  }
  if (tokens.size() != 4 || tokens[0] != kMagic) throw MalformedFile("not a census file");
  if (tokens[1] != kVersion) {
    throw VersionMismatch("unsupported census version '" + std::string(tokens[1]) + "'");
  }

  const auto footer_at = all.rfind("\nsha256=");
  if (header_end == std::string_view::npos || footer_at == std::string_view::npos || footer_at < header_end) {
    throw ChecksumMismatch("missing checksum footer (truncated file?)");
  }
  const std::string_view body = all.substr(0, footer_at + 1);
  std::string_view footer = all.substr(footer_at + 1 + 7);
  if (!footer.empty() && footer.back() == '\n') footer.remove_suffix(1);
  if (footer != sha256_hex(body)) throw ChecksumMismatch("checksum mismatch");

  const std::size_t day = parse_number(field(tokens[2], "day="), "day");
  const std::size_t count = parse_number(field(tokens[3], "count="), "count");
  if (day > static_cast<std::size_t>(kMaxDay)) throw MalformedFile("day out of range");

  std::vector<std::uint32_t> masks;
  masks.reserve(count);
  std::vector<int> birthdays;
  birthdays.reserve(count);
  std::size_t pos = header_end + 1;
  while (pos < body.size()) {
    const auto eol = body.find('\n', pos);
    const std::string_view line = body.substr(pos, eol - pos);
    pos = eol + 1;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw MalformedFile("missing ':' on line " + std::to_string(masks.size() + 2));
    if (parse_number(line.substr(0, colon), "id") != masks.size()) throw MalformedFile("ids out of sequence");
    std::uint32_t mask = 0;
    int bd = 0;
    long last = -1;
    std::string_view rest = line.substr(colon + 1);
    while (!rest.empty()) {
      if (rest.front() != ' ') throw MalformedFile("expected space in option list");
      rest.remove_prefix(1);
      const auto sp = std::min(rest.find(' '), rest.size());
      const std::size_t opt = parse_number(rest.substr(0, sp), "option id");
      rest.remove_prefix(sp);
      if (static_cast<long>(opt) <= last || opt >= masks.size() || opt >= 32) {
        throw MalformedFile("bad option " + std::to_string(opt) + " for member " + std::to_string(masks.size()));
      }
      last = static_cast<long>(opt);
      mask |= 1u << opt;
      bd = std::max(bd, birthdays[opt] + 1);
    }
    if (!masks.empty()) {
      const int prev_bd = birthdays.back();
      if (bd < prev_bd || (bd == prev_bd && !mask_less(masks.back(), mask))) {
        throw MalformedFile("members out of order at " + std::to_string(masks.size()));
      }
    }
    masks.push_back(mask);
    birthdays.push_back(bd);
  }
  if (masks.size() != count) throw MalformedFile("member count does not match header");
  if (!birthdays.empty() && birthdays.back() > static_cast<int>(day)) throw MalformedFile("member born after census day");

  std::vector<std::size_t> prefix;
  for (int d = 0; d <= static_cast<int>(day); ++d) {
    prefix.push_back(static_cast<std::size_t>(std::upper_bound(birthdays.begin(), birthdays.end(), d) - birthdays.begin()));
  }
  return from_masks(static_cast<int>(day), std::move(masks), std::move(prefix));
}

}  // namespace misere
