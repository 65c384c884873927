#ifndef GERBES_ISO_SEARCH_HPP
#define GERBES_ISO_SEARCH_HPP

// Exhaustive isomorphism search, exposed for tests and the acceptance suite
// only; not part of the public operation surface.

#include <functional>
#include <optional>

#include "gerbes/group.hpp"

namespace gerbes {

/// Backtracking search for a group isomorphism G -> H. Intended for small
/// orders (fixtures are <= 12).
inline std::optional<std::vector<int>> find_group_isomorphism(FiniteGroup const& g,
                                                              FiniteGroup const& h) {
  if (g.order != h.order) return std::nullopt;
  int n = g.order;
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  map[0] = 0;
  used[0] = 1;
  auto ok = [&](int k) {
    for (int a = 0; a < n; ++a) {
      if (map[a] < 0) continue;
      int ak = g.op(a, k), ka = g.op(k, a);
      if (map[ak] >= 0 && map[ak] != h.op(map[a], map[k])) return false;
      if (map[ka] >= 0 && map[ka] != h.op(map[k], map[a])) return false;
    }
    return true;
  };
  std::function<bool(int)> rec = [&](int k) {
    if (k == n) return true;
    if (map[k] >= 0) return rec(k + 1);
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      map[k] = v;
      used[v] = 1;
      if (ok(k) && rec(k + 1)) return true;
      map[k] = -1;
      used[v] = 0;
    }
    return false;
  };
  if (rec(0)) return map;
  return std::nullopt;
}

inline bool groups_isomorphic(FiniteGroup const& g, FiniteGroup const& h) {
  return find_group_isomorphism(g, h).has_value();
}

}  // namespace gerbes

#endif  // GERBES_ISO_SEARCH_HPP
