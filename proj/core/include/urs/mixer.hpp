#ifndef URS_MIXER_HPP_
#define URS_MIXER_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "urs/scheme.hpp"

namespace urs {

enum class MixPhase { kFilling, kRingPublished, kClosed };
std::string to_string(MixPhase p);
MixPhase parse_mix_phase(const std::string& s);

enum class WithdrawStatus {
  kAccepted,
  kBadSignature,
  kWrongRing,
  kTagReuse,
  kWrongPhase,
  kMalformed,
};
std::string to_string(WithdrawStatus s);

enum class MixErrorCode {
  kUnknownMix,
  kInvalidParameters,
  kWrongPhase,
  kInsufficientBalance,
  kDuplicateKey,
  kInvalidKey,
  kCorruptState,
};
std::string to_string(MixErrorCode c);

class MixerError : public Error {
 public:
  MixerError(MixErrorCode code, const std::string& what) : Error(what), code_(code) {}
  MixErrorCode code() const { return code_; }

 private:
  MixErrorCode code_;
};

struct DepositRecord {
  Point pk;
  std::string from_account;
  bool funded = true;
};

struct PayoutRecord {
  std::string address;
  Tag tag;
};

struct MixState {
  std::uint64_t mix_id = 0;
  std::uint64_t denomination = 0;
  std::size_t capacity = 0;
  MixPhase phase = MixPhase::kFilling;
  std::vector<DepositRecord> deposits;
  std::optional<Ring> ring;
  std::set<Bytes> seen_tags;  // compressed tag encodings
  std::vector<PayoutRecord> payouts;
  std::uint64_t refunded = 0;

  std::uint64_t funds_in() const;
  std::uint64_t funds_out() const;
  std::uint64_t balance() const { return funds_in() - funds_out(); }
};

struct DepositReceipt {
  std::uint64_t mix_id = 0;
  std::size_t position = 0;
  MixPhase phase = MixPhase::kFilling;
};

// The fixed message every depositor of a pool signs at withdrawal time.
Bytes withdrawal_message(std::uint64_t mix_id);
// Produces the compact signature bytes a depositor submits to withdraw. The
// payout address is bound into the challenge hash, not into the tag.
Bytes sign_withdrawal(const PublicParams& pp, std::uint64_t mix_id, const Ring& ring, const Scalar& sk,
                      const std::string& payout_address, Rng& rng);

// In-process stand-in for the mixing contract. Mutations are linearizable:
// signature checks run outside the lock, and the tag check, tag insertion and
// payout happen in one critical section.
class MixContract {
 public:
  explicit MixContract(PublicParams pp);
  MixContract(const MixContract& other);
  MixContract& operator=(const MixContract& other);

  const PublicParams& params() const { return pp_; }

  // Credits an account from outside the system (test faucet).
  void fund_account(const std::string& account, std::uint64_t amount);
  std::uint64_t balance_of(const std::string& account) const;
  std::map<std::string, std::uint64_t> accounts() const;

  std::uint64_t create(std::uint64_t denomination, std::size_t capacity);
  DepositReceipt deposit(std::uint64_t mix_id, const Point& pk, const std::string& from_account);
  WithdrawStatus withdraw(std::uint64_t mix_id, ByteView sig_bytes, const std::string& payout_address);
  // Refunds every depositor of a pool that never filled.
  void close(std::uint64_t mix_id);

  MixState state(std::uint64_t mix_id) const;
  std::vector<std::uint64_t> mix_ids() const;

  // Per pool: funds in = payouts + refunds + balance. Globally: minted =
  // account balances + pool balances.
  bool conservation_holds() const;

  // Versioned, human-readable JSON; keys sorted so equal states serialize to
  // identical bytes.
  std::string serialize() const;
  static MixContract deserialize(const std::string& text);

 private:
  MixState& pool(std::uint64_t mix_id);
  const MixState& pool(std::uint64_t mix_id) const;

  PublicParams pp_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::uint64_t> accounts_;
  std::map<std::uint64_t, MixState> pools_;
  std::uint64_t next_mix_id_ = 1;
  std::uint64_t minted_ = 0;
};

}  // namespace urs

#endif  // URS_MIXER_HPP_
