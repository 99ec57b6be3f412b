#include "urs/ring.hpp"

#include <algorithm>

namespace urs {

Ring Ring::canonical(const Curve& curve, std::vector<Point> pks) {
  if (pks.size() < 2) throw SchemeError("a ring needs at least two members");
  std::vector<std::pair<Bytes, Point>> keyed;
  keyed.reserve(pks.size());
  for (Point& pk : pks) {
    if (pk.is_infinity()) throw SchemeError("ring member is the point at infinity");
    if (!curve.on_curve(pk)) throw SchemeError("ring member is not on the curve");
    Bytes enc = curve.encode(pk);
    keyed.emplace_back(std::move(enc), std::move(pk));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  for (std::size_t i = 1; i < keyed.size(); ++i) {
    if (keyed[i].first == keyed[i - 1].first) throw SchemeError("duplicate ring member");
  }
  std::vector<Point> members;
  Bytes bytes;
  members.reserve(keyed.size());
  for (auto& [enc, pk] : keyed) {
    append(bytes, enc);
    members.push_back(std::move(pk));
  }
  return Ring(std::move(members), std::move(bytes));
}

std::optional<std::size_t> Ring::index_of(const Point& pk) const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] == pk) return i;
  }
  return std::nullopt;
}

}  // namespace urs
