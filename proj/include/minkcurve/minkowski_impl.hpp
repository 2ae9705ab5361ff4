#pragma once

// Template bodies for minkowski.hpp.

#include <stdexcept>

namespace mink {

namespace detail {

template <class T>
void need_order(const JetCoordsT<T>& j, int k) {
  if (j.order() < k)
    throw std::invalid_argument("jet order " + std::to_string(j.order()) +
                                " too small, need " + std::to_string(k));
}

template <class T>
void push_lightlike(std::vector<T>& r, const JetCoordsT<T>& j, int sign) {
  if (sign > 0) {
    r.push_back(j.A(1) + j.B(1));
  } else if (sign < 0) {
    r.push_back(j.A(1) - j.B(1));
  } else {
    r.push_back(j.A(1) - j.B(1));
    r.push_back(j.A(1) + j.B(1));
  }
}

// Scaled derivatives f^(m)(t)/m!, m = 0..count-1, of a jet expression.
template <class T, class F>
std::vector<T> expr_derivatives(const JetCoordsT<T>& j, int uses, int count, F expr) {
  auto sh = shift_coords(j, uses, count - 1);
  auto v = expr(sh);
  std::vector<T> out;
  for (int m = 0; m < count; ++m) out.push_back(v.c[static_cast<std::size_t>(m)]);
  return out;
}

}  // namespace detail

template <class T>
std::vector<T> stratum_residual(const StratumId& id, const JetCoordsT<T>& p,
                                const JetCoordsT<T>* q) {
  detail::need_order(p, stratum_jet_order(id));
  std::vector<T> r;
  auto position = [&]() {
    if (!q) throw std::invalid_argument(id.name() + " needs a pair of jet points");
    detail::need_order(*q, 1);
    r.push_back(p.A(0) - q->A(0));
    r.push_back(p.B(0) - q->B(0));
  };
  switch (id.kind) {
    case StratumKind::C:
      r = {p.A(1), p.B(1)};
      break;
    case StratumKind::LC:
      r = {p.A(1), p.B(1), p.A(2) - p.B(2)};
      break;
    case StratumKind::RC:
      r = {p.A(1), p.B(1), p.A(2) * p.B(3) - p.A(3) * p.B(2)};
      break;
    case StratumKind::L:
      detail::push_lightlike(r, p, id.sign);
      break;
    case StratumKind::I:
      if (id.k == 1) {
        r = {inflection_expr(p)};
      } else if (id.k == 2) {
        r = {inflection_expr(p), p.A(1) * p.B(3) - p.A(3) * p.B(1)};
      } else {
        r = detail::expr_derivatives(p, 2, id.k,
                                     [](const auto& s) { return inflection_expr(s); });
      }
      break;
    case StratumKind::LI: {
      detail::push_lightlike(r, p, id.sign);
      std::vector<T> w{inflection_expr(p)};
      if (id.k > 1)
        w = detail::expr_derivatives(p, 2, id.k,
                                     [](const auto& s) { return inflection_expr(s); });
      r.insert(r.end(), w.begin(), w.end());
      break;
    }
    case StratumKind::V:
      if (id.k == 1) {
        r = {vertex_expr(p)};
      } else if (id.k == 2) {
        r = {vertex_expr(p), vertex2_expr(p)};
      } else {
        r = detail::expr_derivatives(p, 3, id.k, [](const auto& s) { return vertex_expr(s); });
      }
      break;
    case StratumKind::IT:
      position();
      r.push_back(inflection_expr(p));
      break;
    case StratumKind::VT:
      position();
      r.push_back(vertex_expr(p));
      break;
    case StratumKind::LT:
      position();
      detail::push_lightlike(r, p, id.sign);
      break;
    case StratumKind::Tc:
      position();
      r.push_back(p.A(1) * q->B(1) - q->A(1) * p.B(1));
      break;
  }
  return r;
}

}  // namespace mink
