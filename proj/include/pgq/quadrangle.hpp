// PG(3,q), the symplectic quadrangle W(q) and its Payne derivation at P = <(1,0,0,0)>.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pgq/group.hpp"

namespace pgq {

// Projective point with the first nonzero coordinate scaled to 1.
struct ProjPoint {
  std::array<FieldElem, 4> rep{};
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

ProjPoint normalize(const FieldCtx& F, std::array<FieldElem, 4> v);  // throws InvalidParams on the zero vector
// (x,y) = x1 y4 - x4 y1 + x2 y3 - x3 y2
FieldElem symplectic_form(const FieldCtx& F, const std::array<FieldElem, 4>& x, const std::array<FieldElem, 4>& y);
// x -> x^phi E on the underlying row vector, renormalized
ProjPoint act(const FieldCtx& F, const GroupElem& g, const ProjPoint& x);
ProjPoint to_proj(const FieldCtx& F, const AffinePoint& a);
std::optional<AffinePoint> to_affine(const FieldCtx& F, const ProjPoint& x);  // none when x4 = 0

enum class LineType { Isotropic = 0, Secant = 1 };

struct Quadrangle {
  std::vector<ProjPoint> points;
  std::vector<std::vector<std::uint32_t>> lines;        // point indices
  std::vector<std::vector<std::uint32_t>> point_lines;  // line indices
  std::vector<LineType> line_type;
  int s = 0, t = 0;

  std::optional<std::uint32_t> index_of(const ProjPoint& x) const;
  // the line through two distinct collinear points
  std::optional<std::uint32_t> line_through(std::uint32_t x, std::uint32_t y) const;

  std::uint64_t point_key(const ProjPoint& x) const;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::uint64_t q = 0;
};

// Materializes W(q); TooLarge when the point count exceeds cap.
Quadrangle build_wq(const FieldCtx& F, std::size_t cap = 1u << 20);
// Points: PG(3,q) minus P^perp. Lines: isotropic lines of W(q) avoiding P restricted to those
// points, and the secant lines <P,Q>.
Quadrangle build_payne(const FieldCtx& F, const Quadrangle& wq);

struct GqReport {
  bool pass = true;
  std::uint64_t points = 0, lines = 0, pairs_checked = 0;
  std::string failure;  // first counterexample
};

GqReport verify_gq(const Quadrangle& g, int s, int t);

// Whether g maps the given line of Q^P onto a line of the same type.
bool preserves_line(const FieldCtx& F, const Quadrangle& payne, const GroupElem& g, std::uint32_t line);

}  // namespace pgq
