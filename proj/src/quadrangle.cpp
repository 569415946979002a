#include "pgq/quadrangle.hpp"

#include <algorithm>

namespace pgq {

using Vec4 = std::array<FieldElem, 4>;

ProjPoint normalize(const FieldCtx& F, Vec4 v) {
  int i = 0;
  while (i < 4 && v[i].code == 0) ++i;
  if (i == 4) throw Error(ErrorKind::InvalidParams, "zero vector is not a projective point");
  FieldElem s = F.inv(v[i]);
  for (auto& x : v) x = F.mul(x, s);
  return {v};
}

FieldElem symplectic_form(const FieldCtx& F, const Vec4& x, const Vec4& y) {
  FieldElem r = F.sub(F.mul(x[0], y[3]), F.mul(x[3], y[0]));
  return F.add(r, F.sub(F.mul(x[1], y[2]), F.mul(x[2], y[1])));
}

ProjPoint act(const FieldCtx& F, const GroupElem& g, const ProjPoint& x) {
  Vec4 v;
  for (int i = 0; i < 4; ++i) v[i] = F.frob(x.rep[i], g.phi);
  // row vector times E(a,b,c,t): columns are
  // (v0 - c v1 + (b - ct) v2 + a v3, v1 + t v2 + b v3, v2 + c v3, v3)
  const FieldElem a = g.a, b = g.b, c = g.c, t = g.t;
  Vec4 r;
  r[0] = F.add(F.add(v[0], F.neg(F.mul(c, v[1]))), F.add(F.mul(F.sub(b, F.mul(c, t)), v[2]), F.mul(a, v[3])));
  r[1] = F.add(v[1], F.add(F.mul(t, v[2]), F.mul(b, v[3])));
  r[2] = F.add(v[2], F.mul(c, v[3]));
  r[3] = v[3];
  return normalize(F, r);
}

ProjPoint to_proj(const FieldCtx& F, const AffinePoint& a) { return normalize(F, {a.x, a.y, a.z, F.one()}); }

std::optional<AffinePoint> to_affine(const FieldCtx& F, const ProjPoint& x) {
  if (x.rep[3].code == 0) return std::nullopt;
  FieldElem s = F.inv(x.rep[3]);
  return AffinePoint{F.mul(x.rep[0], s), F.mul(x.rep[1], s), F.mul(x.rep[2], s)};
}

std::uint64_t Quadrangle::point_key(const ProjPoint& x) const {
  std::uint64_t k = 0;
  for (int i = 3; i >= 0; --i) k = k * q + x.rep[i].code;
  return k;
}

std::optional<std::uint32_t> Quadrangle::index_of(const ProjPoint& x) const {
  auto it = index.find(point_key(x));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> Quadrangle::line_through(std::uint32_t x, std::uint32_t y) const {
  for (auto L : point_lines[x])
    if (std::find(lines[L].begin(), lines[L].end(), y) != lines[L].end()) return L;
  return std::nullopt;
}

namespace {

std::uint32_t add_point(Quadrangle& Q, const ProjPoint& x) {
  auto key = Q.point_key(x);
  auto [it, fresh] = Q.index.emplace(key, std::uint32_t(Q.points.size()));
  if (fresh) Q.points.push_back(x);
  return it->second;
}

void add_line(Quadrangle& Q, std::vector<std::uint32_t> pts, LineType type) {
  std::sort(pts.begin(), pts.end());
  std::uint32_t id = std::uint32_t(Q.lines.size());
  for (auto p : pts) Q.point_lines[p].push_back(id);
  Q.lines.push_back(std::move(pts));
  Q.line_type.push_back(type);
}

// points of the line spanned by two independent vectors
std::vector<ProjPoint> line_points(const FieldCtx& F, const Vec4& r1, const Vec4& r2) {
  std::vector<ProjPoint> out{normalize(F, r1)};
  for (std::uint32_t l = 0; l < F.q(); ++l) {
    Vec4 v;
    for (int i = 0; i < 4; ++i) v[i] = F.add(r2[i], F.mul({l}, r1[i]));
    out.push_back(normalize(F, v));
  }
  return out;
}

}  // namespace

Quadrangle build_wq(const FieldCtx& F, std::size_t cap) {
  const std::uint64_t q = F.q();
  const std::uint64_t npts = (q * q * q * q - 1) / (q - 1);
  if (npts > cap) throw Error(ErrorKind::TooLarge, "PG(3," + std::to_string(q) + ") has " + std::to_string(npts) + " points");
  Quadrangle Q;
  Q.q = q;
  Q.s = Q.t = int(q);
  // points in RREF order: pivot position, then free coordinates
  for (int piv = 0; piv < 4; ++piv) {
    std::uint64_t n = 1;
    for (int i = piv + 1; i < 4; ++i) n *= q;
    for (std::uint64_t k = 0; k < n; ++k) {
      Vec4 v{};
      v[piv] = F.one();
      std::uint64_t r = k;
      for (int i = 3; i > piv; --i) {
        v[i] = {std::uint32_t(r % q)};
        r /= q;
      }
      add_point(Q, {v});
    }
  }
  Q.point_lines.resize(Q.points.size());
  // 2-dimensional subspaces in RREF: pivots i < j
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      std::vector<int> f1, f2;  // free columns of each row
      for (int k = i + 1; k < 4; ++k)
        if (k != j) f1.push_back(k);
      for (int k = j + 1; k < 4; ++k) f2.push_back(k);
      std::uint64_t n = 1;
      for (std::size_t k = 0; k < f1.size() + f2.size(); ++k) n *= q;
      for (std::uint64_t code = 0; code < n; ++code) {
        Vec4 r1{}, r2{};
        r1[i] = F.one();
        r2[j] = F.one();
        std::uint64_t r = code;
        for (int k : f1) r1[k] = {std::uint32_t(r % q)}, r /= q;
        for (int k : f2) r2[k] = {std::uint32_t(r % q)}, r /= q;
        if (symplectic_form(F, r1, r2).code) continue;
        std::vector<std::uint32_t> pts;
        for (auto& x : line_points(F, r1, r2)) pts.push_back(*Q.index_of(x));
        add_line(Q, std::move(pts), LineType::Isotropic);
      }
    }
  return Q;
}

Quadrangle build_payne(const FieldCtx& F, const Quadrangle& wq) {
  const std::uint64_t q = F.q();
  const Vec4 P{F.one(), F.zero(), F.zero(), F.zero()};
  Quadrangle Q;
  Q.q = q;
  Q.s = int(q) - 1;
  Q.t = int(q) + 1;
  // points (a,b,c,1), indexed by a + q b + q^2 c
  for (std::uint64_t k = 0; k < q * q * q; ++k) {
    AffinePoint a{{std::uint32_t(k % q)}, {std::uint32_t(k / q % q)}, {std::uint32_t(k / (q * q))}};
    add_point(Q, to_proj(F, a));
  }
  Q.point_lines.resize(Q.points.size());
  auto off_perp = [&](const ProjPoint& x) { return symplectic_form(F, x.rep, P).code != 0; };
  const auto Pidx = wq.index_of(normalize(F, P));
  for (std::size_t L = 0; L < wq.lines.size(); ++L) {
    const auto& pts = wq.lines[L];
    if (Pidx && std::find(pts.begin(), pts.end(), *Pidx) != pts.end()) continue;
    std::vector<std::uint32_t> kept;
    for (auto i : pts)
      if (off_perp(wq.points[i])) kept.push_back(*Q.index_of(wq.points[i]));
    add_line(Q, std::move(kept), LineType::Isotropic);
  }
  // secant lines <P,Q> minus P: (a + l, b, c, 1), one per (b,c)
  for (std::uint64_t bc = 0; bc < q * q; ++bc) {
    std::vector<std::uint32_t> pts;
    for (std::uint64_t a = 0; a < q; ++a) pts.push_back(std::uint32_t(a + q * bc));
    add_line(Q, std::move(pts), LineType::Secant);
  }
  return Q;
}

GqReport verify_gq(const Quadrangle& g, int s, int t) {
  GqReport rep;
  rep.points = g.points.size();
  rep.lines = g.lines.size();
  auto fail = [&](std::string msg) {
    rep.pass = false;
    rep.failure = std::move(msg);
    return rep;
  };
  if (g.s != s || g.t != t)
    return fail("parameter mismatch: structure has order (" + std::to_string(g.s) + "," + std::to_string(g.t) +
                "), requested (" + std::to_string(s) + "," + std::to_string(t) + ")");
  for (std::size_t L = 0; L < g.lines.size(); ++L)
    if (int(g.lines[L].size()) != s + 1)
      return fail("line " + std::to_string(L) + " has " + std::to_string(g.lines[L].size()) + " points");
  for (std::size_t x = 0; x < g.points.size(); ++x)
    if (int(g.point_lines[x].size()) != t + 1)
      return fail("point " + std::to_string(x) + " lies on " + std::to_string(g.point_lines[x].size()) + " lines");
  // mark[y] = number of lines through x and y; must be <= 1, and every line avoiding x has exactly one marked point
  std::vector<std::uint8_t> mark(g.points.size(), 0);
  std::vector<std::uint8_t> on(g.lines.size(), 0);
  for (std::uint32_t x = 0; x < g.points.size(); ++x) {
    for (auto L : g.point_lines[x]) {
      on[L] = 1;
      for (auto y : g.lines[L])
        if (y != x && ++mark[y] > 1)
          return fail("points " + std::to_string(x) + " and " + std::to_string(y) + " share two lines");
    }
    for (std::uint32_t L = 0; L < g.lines.size(); ++L) {
      if (on[L]) continue;
      int seen = 0;
      for (auto y : g.lines[L]) seen += mark[y];
      ++rep.pairs_checked;
      if (seen != 1)
        return fail("point " + std::to_string(x) + " and line " + std::to_string(L) + " have " + std::to_string(seen) +
                    " collinear witnesses");
    }
    for (auto L : g.point_lines[x]) {
      on[L] = 0;
      for (auto y : g.lines[L]) mark[y] = 0;
    }
  }
  return rep;
}

bool preserves_line(const FieldCtx& F, const Quadrangle& payne, const GroupElem& g, std::uint32_t line) {
  const auto& pts = payne.lines[line];
  std::vector<std::uint32_t> img;
  for (auto i : pts) {
    auto j = payne.index_of(act(F, g, payne.points[i]));
    if (!j) return false;
    img.push_back(*j);
  }
  auto L = payne.line_through(img[0], img[1]);
  if (!L || payne.line_type[*L] != payne.line_type[line]) return false;
  std::sort(img.begin(), img.end());
  return img == payne.lines[*L];
}

}  // namespace pgq
