#ifndef URS_RING_HPP_
#define URS_RING_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "urs/bytes.hpp"
#include "urs/curve.hpp"

namespace urs {

// Public keys sorted ascending by compressed encoding, duplicates rejected.
// Any permutation of the same keys yields the same Ring.
class Ring {
 public:
  // Throws SchemeError for fewer than two members, duplicates, infinity or
  // off-curve points.
  static Ring canonical(const Curve& curve, std::vector<Point> pks);

  const std::vector<Point>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const Point& operator[](std::size_t i) const { return members_[i]; }

  // Concatenated compressed encodings in canonical order.
  const Bytes& canonical_bytes() const { return bytes_; }
  Digest digest() const { return Sha256::hash(bytes_); }

  std::optional<std::size_t> index_of(const Point& pk) const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.bytes_ == b.bytes_; }

 private:
  Ring(std::vector<Point> members, Bytes bytes) : members_(std::move(members)), bytes_(std::move(bytes)) {}

  std::vector<Point> members_;
  Bytes bytes_;
};

}  // namespace urs

#endif  // URS_RING_HPP_
