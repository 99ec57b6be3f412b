#include "urs/mixer.hpp"

#include <mutex>

#include "urs/signature_codec.hpp"

namespace urs {

std::string to_string(MixPhase p) {
  switch (p) {
    case MixPhase::kFilling:
      return "FILLING";
    case MixPhase::kRingPublished:
      return "RING_PUBLISHED";
    case MixPhase::kClosed:
      return "CLOSED";
  }
  return "UNKNOWN";
}

MixPhase parse_mix_phase(const std::string& s) {
  if (s == "FILLING") return MixPhase::kFilling;
  if (s == "RING_PUBLISHED") return MixPhase::kRingPublished;
  if (s == "CLOSED") return MixPhase::kClosed;
  throw MixerError(MixErrorCode::kCorruptState, "unknown mix phase '" + s + "'");
}

std::string to_string(WithdrawStatus s) {
  switch (s) {
    case WithdrawStatus::kAccepted:
      return "ACCEPTED";
    case WithdrawStatus::kBadSignature:
      return "BAD_SIGNATURE";
    case WithdrawStatus::kWrongRing:
      return "WRONG_RING";
    case WithdrawStatus::kTagReuse:
      return "TAG_REUSE";
    case WithdrawStatus::kWrongPhase:
      return "WRONG_PHASE";
    case WithdrawStatus::kMalformed:
      return "MALFORMED";
  }
  return "UNKNOWN";
}

std::string to_string(MixErrorCode c) {
  switch (c) {
    case MixErrorCode::kUnknownMix:
      return "UNKNOWN_MIX";
    case MixErrorCode::kInvalidParameters:
      return "INVALID_PARAMETERS";
    case MixErrorCode::kWrongPhase:
      return "WRONG_PHASE";
    case MixErrorCode::kInsufficientBalance:
      return "INSUFFICIENT_BALANCE";
    case MixErrorCode::kDuplicateKey:
      return "DUPLICATE_KEY";
    case MixErrorCode::kInvalidKey:
      return "INVALID_KEY";
    case MixErrorCode::kCorruptState:
      return "CORRUPT_STATE";
  }
  return "UNKNOWN";
}

std::uint64_t MixState::funds_in() const {
  std::uint64_t funded = 0;
  for (const DepositRecord& d : deposits) funded += d.funded ? 1 : 0;
  return denomination * funded;
}

std::uint64_t MixState::funds_out() const { return denomination * payouts.size() + refunded; }

Bytes withdrawal_message(std::uint64_t mix_id) {
  Bytes m = to_bytes("urs-mix-withdraw");
  append_u64_be(m, mix_id);
  return m;
}

Bytes sign_withdrawal(const PublicParams& pp, std::uint64_t mix_id, const Ring& ring, const Scalar& sk,
                      const std::string& payout_address, Rng& rng) {
  Signature sig = ring_sign(pp, sk, ring, withdrawal_message(mix_id), rng, to_bytes(payout_address));
  return encode_signature(pp.curve, sig);
}

MixContract::MixContract(PublicParams pp) : pp_(std::move(pp)) {}

MixContract::MixContract(const MixContract& other) : pp_(other.pp_) {
  std::shared_lock lock(other.mu_);
  accounts_ = other.accounts_;
  pools_ = other.pools_;
  next_mix_id_ = other.next_mix_id_;
  minted_ = other.minted_;
}

MixContract& MixContract::operator=(const MixContract& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mu_);
  std::shared_lock other_lock(other.mu_);
  pp_ = other.pp_;
  accounts_ = other.accounts_;
  pools_ = other.pools_;
  next_mix_id_ = other.next_mix_id_;
  minted_ = other.minted_;
  return *this;
}

MixState& MixContract::pool(std::uint64_t mix_id) {
  auto it = pools_.find(mix_id);
  if (it == pools_.end()) throw MixerError(MixErrorCode::kUnknownMix, "no mix with id " + std::to_string(mix_id));
  return it->second;
}

const MixState& MixContract::pool(std::uint64_t mix_id) const {
  auto it = pools_.find(mix_id);
  if (it == pools_.end()) throw MixerError(MixErrorCode::kUnknownMix, "no mix with id " + std::to_string(mix_id));
  return it->second;
}

void MixContract::fund_account(const std::string& account, std::uint64_t amount) {
  if (account.empty()) throw MixerError(MixErrorCode::kInvalidParameters, "account name must not be empty");
  std::scoped_lock lock(mu_);
  accounts_[account] += amount;
  minted_ += amount;
}

std::uint64_t MixContract::balance_of(const std::string& account) const {
  std::shared_lock lock(mu_);
  auto it = accounts_.find(account);
  return it == accounts_.end() ? 0 : it->second;
}

std::map<std::string, std::uint64_t> MixContract::accounts() const {
  std::shared_lock lock(mu_);
  return accounts_;
}

std::uint64_t MixContract::create(std::uint64_t denomination, std::size_t capacity) {
  if (denomination == 0) throw MixerError(MixErrorCode::kInvalidParameters, "denomination must be positive");
  if (capacity < 2) throw MixerError(MixErrorCode::kInvalidParameters, "capacity below 2 gives no anonymity");
  std::scoped_lock lock(mu_);
  std::uint64_t id = next_mix_id_++;
  MixState s;
  s.mix_id = id;
  s.denomination = denomination;
  s.capacity = capacity;
  pools_.emplace(id, std::move(s));
  return id;
}

DepositReceipt MixContract::deposit(std::uint64_t mix_id, const Point& pk, const std::string& from_account) {
  if (pk.is_infinity() || !pp_.curve.on_curve(pk)) throw MixerError(MixErrorCode::kInvalidKey, "deposit key is not a valid point");
  std::scoped_lock lock(mu_);
  MixState& s = pool(mix_id);
  if (s.phase != MixPhase::kFilling) throw MixerError(MixErrorCode::kWrongPhase, "mix is not accepting deposits");
  for (const DepositRecord& d : s.deposits) {
    if (d.pk == pk) throw MixerError(MixErrorCode::kDuplicateKey, "public key already deposited");
  }
  auto acct = accounts_.find(from_account);
  if (acct == accounts_.end() || acct->second < s.denomination) {
    throw MixerError(MixErrorCode::kInsufficientBalance, "account '" + from_account + "' cannot cover the denomination");
  }
  acct->second -= s.denomination;
  s.deposits.push_back(DepositRecord{pk, from_account, true});
  if (s.deposits.size() == s.capacity) {
    std::vector<Point> pks;
    pks.reserve(s.deposits.size());
    for (const DepositRecord& d : s.deposits) pks.push_back(d.pk);
    s.ring = Ring::canonical(pp_.curve, std::move(pks));
    s.phase = MixPhase::kRingPublished;
  }
  return DepositReceipt{mix_id, s.deposits.size() - 1, s.phase};
}

WithdrawStatus MixContract::withdraw(std::uint64_t mix_id, ByteView sig_bytes, const std::string& payout_address) {
  std::optional<Ring> ring;
  {
    std::shared_lock lock(mu_);
    const MixState& s = pool(mix_id);
    if (s.phase != MixPhase::kRingPublished) return WithdrawStatus::kWrongPhase;
    ring = s.ring;
  }
  if (payout_address.empty()) return WithdrawStatus::kMalformed;

  const Bytes msg = withdrawal_message(mix_id);
  Signature sig;
  try {
    sig = decode_signature(pp_.curve, sig_bytes, *ring, msg);
  } catch (const DecodeError&) {
    return WithdrawStatus::kMalformed;
  }
  if (sig.cs.size() != ring->size()) return WithdrawStatus::kWrongRing;
  if (!ring_verify(pp_, *ring, msg, sig, to_bytes(payout_address))) return WithdrawStatus::kBadSignature;

  Bytes tag = pp_.curve.encode(sig.tau.point);
  std::scoped_lock lock(mu_);
  MixState& s = pool(mix_id);
  if (s.phase != MixPhase::kRingPublished) return WithdrawStatus::kWrongPhase;
  if (s.seen_tags.contains(tag)) return WithdrawStatus::kTagReuse;
  s.seen_tags.insert(std::move(tag));
  s.payouts.push_back(PayoutRecord{payout_address, sig.tau});
  accounts_[payout_address] += s.denomination;
  return WithdrawStatus::kAccepted;
}

void MixContract::close(std::uint64_t mix_id) {
  std::scoped_lock lock(mu_);
  MixState& s = pool(mix_id);
  if (s.phase != MixPhase::kFilling) throw MixerError(MixErrorCode::kWrongPhase, "only a filling mix can be closed");
  for (const DepositRecord& d : s.deposits) {
    if (!d.funded) continue;
    accounts_[d.from_account] += s.denomination;
    s.refunded += s.denomination;
  }
  s.phase = MixPhase::kClosed;
}

MixState MixContract::state(std::uint64_t mix_id) const {
  std::shared_lock lock(mu_);
  return pool(mix_id);
}

std::vector<std::uint64_t> MixContract::mix_ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::uint64_t> ids;
  for (const auto& [id, s] : pools_) ids.push_back(id);
  return ids;
}

bool MixContract::conservation_holds() const {
  std::shared_lock lock(mu_);
  std::uint64_t held = 0;
  for (const auto& [id, s] : pools_) {
    if (s.funds_out() > s.funds_in()) return false;
    if (s.payouts.size() != s.seen_tags.size() || s.payouts.size() > s.capacity) return false;
    held += s.balance();
  }
  std::uint64_t in_accounts = 0;
  for (const auto& [name, bal] : accounts_) in_accounts += bal;
  return in_accounts + held == minted_;
}

}  // namespace urs
