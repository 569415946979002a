#include "pgq/group.hpp"

#include <bit>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace pgq {

ETuple e_mul(const FieldCtx& F, const ETuple& x, const ETuple& y) {
  // E(a,b,c,t) E(x,y,z,w) = E(a+x-bz+cy-czw, b+y+cw, c+z, t+w)
  FieldElem cz = F.mul(x.c, y.c);
  FieldElem a = F.add(F.add(x.a, y.a), F.sub(F.mul(x.c, y.b), F.add(F.mul(x.b, y.c), F.mul(cz, y.t))));
  FieldElem b = F.add(F.add(x.b, y.b), F.mul(x.c, y.t));
  return {a, b, F.add(x.c, y.c), F.add(x.t, y.t)};
}

ETuple e_inv(const FieldCtx& F, const ETuple& x) {
  // E(a,b,c,t)^-1 = E(-a, -b+ct, -c, -t)
  return {F.neg(x.a), F.sub(F.mul(x.c, x.t), x.b), F.neg(x.c), F.neg(x.t)};
}

ETuple e_frob(const FieldCtx& F, const ETuple& x, Frob s) {
  if (s.exp == 0) return x;
  return {F.frob(x.a, s), F.frob(x.b, s), F.frob(x.c, s), F.frob(x.t, s)};
}

GroupElem g_identity() { return GroupElem{}; }

GroupElem g_mul(const FieldCtx& F, const GroupElem& g, const GroupElem& h) {
  ETuple r = e_mul(F, e_frob(F, g.e(), h.phi), h.e());
  return {r.a, r.b, r.c, r.t, F.compose(g.phi, h.phi)};
}

GroupElem g_inv(const FieldCtx& F, const GroupElem& g) {
  Frob si = F.inverse(g.phi);
  ETuple r = e_inv(F, e_frob(F, g.e(), si));
  return {r.a, r.b, r.c, r.t, si};
}

GroupElem g_pow(const FieldCtx& F, const GroupElem& g, long long n) {
  GroupElem base = n < 0 ? g_inv(F, g) : g;
  unsigned long long e = n < 0 ? 0ULL - static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
  GroupElem r = g_identity();
  while (e) {
    if (e & 1) r = g_mul(F, r, base);
    e >>= 1;
    if (e) base = g_mul(F, base, base);
  }
  return r;
}

GroupElem g_conj(const FieldCtx& F, const GroupElem& g, const GroupElem& h) {
  return g_mul(F, g_mul(F, g_inv(F, h), g), h);
}

GroupElem commutator(const FieldCtx& F, const GroupElem& g, const GroupElem& h) {
  return g_mul(F, g_mul(F, g_inv(F, g), g_inv(F, h)), g_mul(F, g, h));
}

bool g_commute(const FieldCtx& F, const GroupElem& g, const GroupElem& h) { return g_mul(F, g, h) == g_mul(F, h, g); }

std::uint64_t element_order(const FieldCtx& F, const GroupElem& g, std::uint64_t cap) {
  const GroupElem id = g_identity();
  if (g == id) return 1;
  // fast path for p-power orders
  GroupElem x = g;
  std::uint64_t ord = 1;
  for (int k = 0; k < 64 && ord <= cap; ++k) {
    x = g_pow(F, x, F.p());
    ord *= std::uint64_t(F.p());
    if (x == id) {
      // smallest p-power: walk down from ord
      while (ord > 1 && g_pow(F, g, static_cast<long long>(ord / F.p())) == id) ord /= F.p();
      return ord;
    }
  }
  x = g;
  for (std::uint64_t n = 1; n <= cap; ++n) {
    if (x == id) return n;
    x = g_mul(F, x, g);
  }
  throw Error(ErrorKind::CapExceeded, "element order exceeds cap");
}

AffinePoint act(const FieldCtx& F, const GroupElem& g, const AffinePoint& P) {
  FieldElem x = F.frob(P.x, g.phi), y = F.frob(P.y, g.phi), z = F.frob(P.z, g.phi);
  // (x, y, z, 1) E(a, b, c, t)
  FieldElem nx = F.add(F.add(x, g.a), F.sub(F.mul(z, F.sub(g.b, F.mul(g.c, g.t))), F.mul(y, g.c)));
  FieldElem ny = F.add(F.add(y, g.b), F.mul(z, g.t));
  return {nx, ny, F.add(z, g.c)};
}

std::string elem_to_string(const FieldCtx& F, const GroupElem& g) {
  return "a=" + F.to_string(g.a) + ";b=" + F.to_string(g.b) + ";c=" + F.to_string(g.c) + ";t=" + F.to_string(g.t) +
         ";f=" + std::to_string(g.phi.exp);
}

GroupElem elem_from_string(const FieldCtx& F, std::string_view s) {
  auto bad = [&] { return Error(ErrorKind::ParseError, "bad element text '" + std::string(s) + "'"); };
  GroupElem g;
  int seen = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto semi = s.find(';', pos);
    if (semi == std::string_view::npos) semi = s.size();
    auto part = s.substr(pos, semi - pos);
    pos = semi + 1;
    auto eq = part.find('=');
    if (eq == std::string_view::npos) throw bad();
    auto key = part.substr(0, eq), val = part.substr(eq + 1);
    if (key == "f") {
      int e = 0;
      auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), e);
      if (ec != std::errc() || ptr != val.data() + val.size() || e < 0 || e >= F.m()) throw bad();
      g.phi.exp = e;
      seen |= 16;
      continue;
    }
    if (val.size() < 2 || val.front() != '[' || val.back() != ']') throw bad();
    std::vector<int> c;
    auto body = val.substr(1, val.size() - 2);
    std::size_t q = 0;
    while (q < body.size()) {
      auto comma = body.find(',', q);
      if (comma == std::string_view::npos) comma = body.size();
      int v = 0;
      auto tok = body.substr(q, comma - q);
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) throw bad();
      c.push_back(v);
      q = comma + 1;
    }
    FieldElem x = F.from_coeffs(c);
    if (key == "a") g.a = x, seen |= 1;
    else if (key == "b") g.b = x, seen |= 2;
    else if (key == "c") g.c = x, seen |= 4;
    else if (key == "t") g.t = x, seen |= 8;
    else throw bad();
  }
  if (seen != 31) throw bad();
  return g;
}

KeyCodec::KeyCodec(const FieldCtx& F) {
  w_ = std::bit_width(F.q() - 1);
  if (w_ == 0) w_ = 1;
  int fw = std::bit_width(unsigned(F.m() - 1));
  if (4 * w_ + fw > 64) throw Error(ErrorKind::TooLarge, "field too large for packed element keys");
  mask_ = (std::uint64_t(1) << w_) - 1;
}

KeySet::KeySet(std::size_t expected) {
  std::size_t cap = 16;
  while (cap < 2 * expected) cap <<= 1;
  slots_.assign(cap, 0);
  used_.assign(cap, 0);
  mask_ = cap - 1;
}

void KeySet::clear() {
  std::fill(used_.begin(), used_.end(), 0);
  size_ = 0;
}

bool KeySet::insert(std::uint64_t k) {
  if (2 * (size_ + 1) > slots_.size()) grow();
  std::size_t i = mix(k) & mask_;
  while (used_[i]) {
    if (slots_[i] == k) return false;
    i = (i + 1) & mask_;
  }
  used_[i] = 1;
  slots_[i] = k;
  ++size_;
  return true;
}

bool KeySet::contains(std::uint64_t k) const {
  std::size_t i = mix(k) & mask_;
  while (used_[i]) {
    if (slots_[i] == k) return true;
    i = (i + 1) & mask_;
  }
  return false;
}

void KeySet::grow() {
  std::vector<std::uint64_t> old_slots;
  std::vector<std::uint8_t> old_used;
  old_slots.swap(slots_);
  old_used.swap(used_);
  std::size_t cap = old_slots.size() * 2;
  slots_.assign(cap, 0);
  used_.assign(cap, 0);
  mask_ = cap - 1;
  size_ = 0;
  for (std::size_t i = 0; i < old_slots.size(); ++i)
    if (old_used[i]) insert(old_slots[i]);
}

std::vector<GroupElem> GroupSpec::basis_generators() const {
  std::vector<GroupElem> out;
  const FieldElem z = F_->zero();
  auto basis = F_->fp_basis();
  for (auto b : basis) out.push_back(elem_at(b, z, z));
  for (auto b : basis) out.push_back(elem_at(z, b, z));
  for (auto b : basis) out.push_back(elem_at(z, z, b));
  return out;
}

SubgroupSet::SubgroupSet(FieldPtr F, std::size_t cap) : F_(std::move(F)), cap_(cap), codec_(*F_) {
  insert(g_identity());
}

void SubgroupSet::insert(const GroupElem& g) {
  std::uint64_t k = codec_.pack(g);
  if (set_.insert(k)) {
    keys_.push_back(k);
    if (keys_.size() > cap_)
      throw Error(ErrorKind::CapExceeded, "subgroup closure exceeded cap of " + std::to_string(cap_) + " elements");
  }
}

std::vector<GroupElem> SubgroupSet::elements() const {
  std::vector<GroupElem> out;
  out.reserve(keys_.size());
  for (auto k : keys_) out.push_back(codec_.unpack(k));
  return out;
}

bool SubgroupSet::add_generator(const GroupElem& g) {
  if (contains(g)) return false;
  const FieldCtx& F = *F_;
  const std::size_t n_old = keys_.size();
  gens_.push_back(g);
  std::vector<GroupElem> reps{g_identity()};
  for (std::size_t r = 0; r < reps.size(); ++r) {
    for (std::size_t s = 0; s < gens_.size(); ++s) {
      GroupElem e = g_mul(F, reps[r], gens_[s]);
      if (contains(e)) continue;
      for (std::size_t i = 0; i < n_old; ++i) insert(g_mul(F, codec_.unpack(keys_[i]), e));
      reps.push_back(e);
    }
  }
  return true;
}

void SubgroupSet::make_normal(const std::vector<GroupElem>& conj) {
  const FieldCtx& F = *F_;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (const auto& s : conj) {
      GroupElem x = g_conj(F, gens_[i], s);
      if (!contains(x)) add_generator(x);
    }
}

SubgroupSet SubgroupSet::closure(FieldPtr F, const std::vector<GroupElem>& gens, std::size_t cap) {
  SubgroupSet H(std::move(F), cap);
  for (const auto& g : gens) H.add_generator(g);
  return H;
}

CheckMode CheckMode::parse(std::string_view s) {
  CheckMode m;
  if (s == "exhaustive") return m;
  auto bad = [&] { return Error(ErrorKind::ParseError, "mode must be 'exhaustive' or 'sample:n:seed', got '" + std::string(s) + "'"); };
  if (s.substr(0, 7) != "sample:") throw bad();
  auto rest = s.substr(7);
  auto colon = rest.find(':');
  if (colon == std::string_view::npos) throw bad();
  auto n = rest.substr(0, colon), seed = rest.substr(colon + 1);
  if (seed.substr(0, 4) == "seed") seed = seed.substr(4);
  m.exhaustive = false;
  auto r1 = std::from_chars(n.data(), n.data() + n.size(), m.samples);
  auto r2 = std::from_chars(seed.data(), seed.data() + seed.size(), m.seed);
  if (r1.ec != std::errc() || r1.ptr != n.data() + n.size() || r2.ec != std::errc() ||
      r2.ptr != seed.data() + seed.size() || n.empty() || seed.empty())
    throw bad();
  return m;
}

std::string CheckMode::to_string() const {
  if (exhaustive) return "exhaustive";
  return "sample:" + std::to_string(samples) + ":" + std::to_string(seed);
}

std::size_t cap_from_env(const char* name, std::size_t dflt) {
  if (const char* v = std::getenv(name)) {
    std::size_t x = 0;
    auto [ptr, ec] = std::from_chars(v, v + std::char_traits<char>::length(v), x);
    if (ec == std::errc() && x > 0) return x;
  }
  return dflt;
}

TheoremMainReport check_theorem_main(const GroupSpec& G, const CheckMode& mode) {
  const FieldCtx& F = G.field();
  const std::uint64_t q = F.q();
  TheoremMainReport rep;
  rep.mode = mode;

  auto check_pair = [&](const GroupElem& g1, const GroupElem& g2, auto&& lookup) {
    GroupElem prod = g_mul(F, g1, g2);
    GroupElem want = lookup(prod.a, prod.b, prod.c);
    ++rep.pairs_checked;
    if (prod.phi != want.phi || prod.t != want.t) {
      rep.pass = false;
      rep.violation = TheoremMainViolation{{g1.a, g1.b, g1.c}, {g2.a, g2.b, g2.c}, {prod.a, prod.b, prod.c},
                                           prod.phi != want.phi ? "theta" : "T"};
      return false;
    }
    return true;
  };

  if (mode.exhaustive) {
    const std::uint64_t n = q * q * q;
    const std::size_t cap = cap_from_env("PGQ_EXHAUSTIVE_PAIRS_CAP", std::size_t(1) << 30);
    if (n * n > cap)
      throw Error(ErrorKind::CapExceeded, "exhaustive check needs " + std::to_string(n * n) + " pairs");
    std::vector<GroupElem> table(n);
    for (std::uint64_t i = 0; i < n; ++i)
      table[i] = G.elem_at({std::uint32_t(i % q)}, {std::uint32_t(i / q % q)}, {std::uint32_t(i / (q * q))});
    auto lookup = [&](FieldElem a, FieldElem b, FieldElem c) {
      return table[a.code + q * (b.code + q * c.code)];
    };
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j)
        if (!check_pair(table[i], table[j], lookup)) return rep;
    return rep;
  }

  Rng rng(mode.seed);
  auto lookup = [&](FieldElem a, FieldElem b, FieldElem c) { return G.elem_at(a, b, c); };
  for (std::uint64_t k = 0; k < mode.samples; ++k) {
    FieldElem a = rng.elem(F), b = rng.elem(F), c = rng.elem(F);
    FieldElem x = rng.elem(F), y = rng.elem(F), z = rng.elem(F);
    if (!check_pair(G.elem_at(a, b, c), G.elem_at(x, y, z), lookup)) return rep;
  }
  return rep;
}

}  // namespace pgq
