// State-file (de)serialization for MixContract.

#include <mutex>

#include <nlohmann/json.hpp>

#include "urs/mixer.hpp"

namespace urs {

namespace {

using nlohmann::json;

constexpr int kStateVersion = 1;

json point_json(const Curve& curve, const Point& p) { return to_hex(curve.encode(p)); }

Point point_from(const Curve& curve, const json& j) {
  try {
    return curve.decode(from_hex(j.get<std::string>()));
  } catch (const Error& e) {
    throw MixerError(MixErrorCode::kCorruptState, std::string("bad point in state file: ") + e.what());
  }
}

}  // namespace

std::string MixContract::serialize() const {
  std::shared_lock lock(mu_);
  const Curve& curve = pp_.curve;
  json doc;
  doc["version"] = kStateVersion;
  doc["curve"] = curve.id();
  doc["hash"] = to_string(pp_.h_variant);
  doc["lambda"] = pp_.lambda;
  doc["allow_insecure"] = pp_.insecure_override;
  doc["next_mix_id"] = next_mix_id_;
  doc["minted"] = minted_;
  doc["accounts"] = json::object();
  for (const auto& [name, bal] : accounts_) doc["accounts"][name] = bal;
  json pools = json::array();
  for (const auto& [id, s] : pools_) {
    json p;
    p["id"] = id;
    p["denomination"] = s.denomination;
    p["capacity"] = s.capacity;
    p["phase"] = to_string(s.phase);
    p["refunded"] = s.refunded;
    p["balance"] = s.balance();
    json deposits = json::array();
    for (const DepositRecord& d : s.deposits) {
      deposits.push_back({{"pk", point_json(curve, d.pk)}, {"from", d.from_account}, {"funded", d.funded}});
    }
    p["deposits"] = std::move(deposits);
    json ring = json::array();
    if (s.ring) {
      for (const Point& m : s.ring->members()) ring.push_back(point_json(curve, m));
    }
    p["ring"] = std::move(ring);
    json tags = json::array();
    for (const Bytes& t : s.seen_tags) tags.push_back(to_hex(t));
    p["seen_tags"] = std::move(tags);
    json payouts = json::array();
    for (const PayoutRecord& r : s.payouts) {
      payouts.push_back({{"address", r.address}, {"tag", point_json(curve, r.tag.point)}});
    }
    p["payouts"] = std::move(payouts);
    pools.push_back(std::move(p));
  }
  doc["pools"] = std::move(pools);
  return doc.dump(2) + "\n";
}

MixContract MixContract::deserialize(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MixerError(MixErrorCode::kCorruptState, std::string("state file is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("version").get<int>() != kStateVersion) {
      throw MixerError(MixErrorCode::kCorruptState, "unsupported state file version");
    }
    const Curve& curve = Curve::by_id(doc.at("curve").get<std::string>());
    PublicParams pp = setup(doc.at("lambda").get<unsigned>(), curve,
                            parse_hash_variant(doc.at("hash").get<std::string>()),
                            doc.at("allow_insecure").get<bool>());
    MixContract contract(std::move(pp));
    contract.next_mix_id_ = doc.at("next_mix_id").get<std::uint64_t>();
    contract.minted_ = doc.at("minted").get<std::uint64_t>();
    for (const auto& [name, bal] : doc.at("accounts").items()) contract.accounts_[name] = bal.get<std::uint64_t>();
    for (const json& p : doc.at("pools")) {
      MixState s;
      s.mix_id = p.at("id").get<std::uint64_t>();
      s.denomination = p.at("denomination").get<std::uint64_t>();
      s.capacity = p.at("capacity").get<std::size_t>();
      s.phase = parse_mix_phase(p.at("phase").get<std::string>());
      s.refunded = p.at("refunded").get<std::uint64_t>();
      for (const json& d : p.at("deposits")) {
        s.deposits.push_back(DepositRecord{point_from(curve, d.at("pk")), d.at("from").get<std::string>(),
                                           d.at("funded").get<bool>()});
      }
      if (!p.at("ring").empty()) {
        std::vector<Point> members;
        for (const json& m : p.at("ring")) members.push_back(point_from(curve, m));
        s.ring = Ring::canonical(curve, std::move(members));
      }
      for (const json& t : p.at("seen_tags")) s.seen_tags.insert(from_hex(t.get<std::string>()));
      for (const json& r : p.at("payouts")) {
        s.payouts.push_back(PayoutRecord{r.at("address").get<std::string>(), Tag{point_from(curve, r.at("tag"))}});
      }
      if (s.balance() != p.at("balance").get<std::uint64_t>()) {
        throw MixerError(MixErrorCode::kCorruptState, "pool balance does not match its deposits and payouts");
      }
      contract.pools_.emplace(s.mix_id, std::move(s));
    }
    return contract;
  } catch (const json::exception& e) {
    throw MixerError(MixErrorCode::kCorruptState, std::string("malformed state file: ") + e.what());
  }
}

}  // namespace urs
