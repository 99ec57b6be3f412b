#include "urs_cli/cli.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "urs/urs.hpp"

namespace urs::cli {

namespace {

namespace fs = std::filesystem;

// Input problems the user can fix; reported with exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string curve = "secp256k1";
  std::string hash = "ft";
  std::string state = "urs-state.json";
  std::optional<std::uint64_t> seed;
  bool allow_insecure = false;
  bool curve_given = false;
  bool hash_given = false;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(path + ": cannot write file");
  out << text;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

// "@path" reads a file, anything else is taken literally.
std::string value_or_file(const std::string& v) { return v.starts_with("@") ? trim(read_text(v.substr(1))) : v; }

Bytes hex_arg(const std::string& what, const std::string& v) {
  try {
    return from_hex(value_or_file(v));
  } catch (const DecodeError& e) {
    throw InputError(what + ": " + e.what());
  }
}

PublicParams params_of(const Globals& g) {
  const Curve& curve = Curve::by_id(g.curve);
  return setup(128, curve, parse_hash_variant(g.hash), g.allow_insecure);
}

std::unique_ptr<Rng> make_rng(const Globals& g) {
  if (g.seed) return std::make_unique<SeededRng>(*g.seed);
  return std::make_unique<SystemRng>();
}

Scalar load_secret(const Curve& curve, const std::string& path) {
  std::string text = trim(read_text(path));
  try {
    return Scalar::from_hex(curve.order(), text);
  } catch (const Error& e) {
    throw InputError(path + ":1: bad secret key: " + e.what());
  }
}

Point parse_point(const Curve& curve, const std::string& where, const std::string& hex) {
  try {
    return curve.decode(from_hex(hex));
  } catch (const Error& e) {
    throw InputError(where + ": bad public key: " + e.what());
  }
}

Ring load_ring(const Curve& curve, const std::string& path) {
  std::istringstream in(read_text(path));
  std::vector<Point> members;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    line = trim(line);
    if (line.empty() || line.starts_with("#")) continue;
    members.push_back(parse_point(curve, path + ":" + std::to_string(lineno), line));
  }
  try {
    return Ring::canonical(curve, std::move(members));
  } catch (const SchemeError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string ring_text(const Curve& curve, const Ring& ring) {
  std::string out;
  for (const Point& p : ring.members()) out += to_hex(curve.encode(p)) + "\n";
  return out;
}

struct MessageArgs {
  std::string text;
  std::string hex;
};

void add_message_options(CLI::App* cmd, MessageArgs& m) {
  auto* t = cmd->add_option("--msg", m.text, "Message as text");
  auto* h = cmd->add_option("--msg-hex", m.hex, "Message as hex");
  t->excludes(h);
}

Bytes message_of(const MessageArgs& m) { return m.hex.empty() ? to_bytes(m.text) : hex_arg("--msg-hex", m.hex); }

// Holds an exclusive or shared flock on "<state>.lock" for its lifetime.
class StateLock {
 public:
  StateLock(const std::string& state_path, bool exclusive) {
    std::string lock_path = state_path + ".lock";
    fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw StateError(lock_path + ": cannot open lock file");
    if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      throw StateError(lock_path + ": cannot lock");
    }
  }
  ~StateLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  StateLock(const StateLock&) = delete;
  StateLock& operator=(const StateLock&) = delete;

 private:
  int fd_ = -1;
};

MixContract load_contract(const Globals& g) {
  if (!fs::exists(g.state)) return MixContract(params_of(g));
  MixContract contract = MixContract::deserialize(read_text(g.state));
  const PublicParams& pp = contract.params();
  if (g.curve_given && pp.curve.id() != g.curve) {
    throw InputError("state file uses curve " + pp.curve.id() + ", not " + g.curve);
  }
  if (g.hash_given && to_string(pp.h_variant) != g.hash) {
    throw InputError("state file uses hash " + to_string(pp.h_variant) + ", not " + g.hash);
  }
  return contract;
}

void save_contract(const Globals& g, const MixContract& contract) {
  std::string tmp = g.state + ".tmp";
  write_text(tmp, contract.serialize());
  fs::rename(tmp, g.state);
}

int withdraw_exit(WithdrawStatus s) {
  switch (s) {
    case WithdrawStatus::kAccepted:
      return kOk;
    case WithdrawStatus::kBadSignature:
      return kWithdrawBadSignature;
    case WithdrawStatus::kWrongRing:
      return kWithdrawWrongRing;
    case WithdrawStatus::kTagReuse:
      return kWithdrawTagReuse;
    case WithdrawStatus::kWrongPhase:
      return kWithdrawWrongPhase;
    case WithdrawStatus::kMalformed:
      return kWithdrawMalformed;
  }
  return kReject;
}

std::string format_indices(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unique ring signatures over secp256k1 and a mixer built on them", "urs"};
  app.require_subcommand(1);
  Globals g;
  auto* curve_opt = app.add_option("--curve", g.curve, "secp256k1 | test-31 | test-11");
  auto* hash_opt = app.add_option("--hash", g.hash, "ft | try-increment | insecure-mult-g");
  app.add_option("--state", g.state, "Mixer state file");
  app.add_option("--seed", g.seed, "Seed for reproducible randomness");
  app.add_flag("--allow-insecure", g.allow_insecure, "Permit the insecure hash variant");

  std::function<int()> action;

  auto* keygen = app.add_subcommand("keygen", "Generate a key pair");
  std::string key_prefix;
  keygen->add_option("--out", key_prefix, "Writes <out>.sk and <out>.pk")->required();
  keygen->callback([&] {
    action = [&] {
      PublicParams pp = params_of(g);
      auto rng = make_rng(g);
      KeyPair kp = ring_gen(pp, *rng);
      write_text(key_prefix + ".sk", kp.sk.to_hex() + "\n");
      std::string pk = to_hex(pp.curve.encode(kp.pk));
      write_text(key_prefix + ".pk", pk + "\n");
      out << pk << "\n";
      return int{kOk};
    };
  });

  auto* sign = app.add_subcommand("sign", "Sign a message for a ring");
  std::string key_path, ring_path;
  MessageArgs sign_msg;
  sign->add_option("--key", key_path, "Secret key file")->required();
  sign->add_option("--ring", ring_path, "Ring file, one public key per line")->required();
  add_message_options(sign, sign_msg);
  sign->callback([&] {
    action = [&] {
      PublicParams pp = params_of(g);
      Ring ring = load_ring(pp.curve, ring_path);
      Scalar sk = load_secret(pp.curve, key_path);
      auto rng = make_rng(g);
      Signature sig = ring_sign(pp, sk, ring, message_of(sign_msg), *rng);
      out << to_hex(encode_signature(pp.curve, sig)) << "\n";
      return int{kOk};
    };
  });

  auto* verify = app.add_subcommand("verify", "Verify a signature");
  MessageArgs verify_msg;
  std::string sig_arg;
  verify->add_option("--ring", ring_path, "Ring file")->required();
  verify->add_option("--sig", sig_arg, "Signature hex or @file")->required();
  add_message_options(verify, verify_msg);
  verify->callback([&] {
    action = [&] {
      PublicParams pp = params_of(g);
      Ring ring = load_ring(pp.curve, ring_path);
      Bytes msg = message_of(verify_msg);
      bool ok = false;
      try {
        ok = ring_verify(pp, ring, msg, decode_signature(pp.curve, hex_arg("--sig", sig_arg), ring, msg));
      } catch (const DecodeError&) {
        ok = false;
      }
      out << (ok ? "ACCEPT" : "REJECT") << "\n";
      return ok ? int{kOk} : int{kReject};
    };
  });

  auto* linkcmd = app.add_subcommand("link", "Check whether two signatures share a signer");
  MessageArgs link_msg;
  std::string sig1_arg, sig2_arg;
  linkcmd->add_option("--ring", ring_path, "Ring file")->required();
  linkcmd->add_option("--sig1", sig1_arg, "First signature hex or @file")->required();
  linkcmd->add_option("--sig2", sig2_arg, "Second signature hex or @file")->required();
  add_message_options(linkcmd, link_msg);
  linkcmd->callback([&] {
    action = [&] {
      PublicParams pp = params_of(g);
      Ring ring = load_ring(pp.curve, ring_path);
      Bytes msg = message_of(link_msg);
      std::vector<Signature> sigs;
      for (const std::string* a : {&sig1_arg, &sig2_arg}) {
        std::optional<Signature> sig;
        try {
          sig = decode_signature(pp.curve, hex_arg("signature", *a), ring, msg);
        } catch (const DecodeError&) {
        }
        if (!sig || !ring_verify(pp, ring, msg, *sig)) {
          out << "REJECT " << (a == &sig1_arg ? "sig1" : "sig2") << "\n";
          return int{kReject};
        }
        sigs.push_back(*sig);
      }
      out << to_string(link(sigs[0], sigs[1])) << "\n";
      return int{kOk};
    };
  });

  auto* mix = app.add_subcommand("mix", "Mixer lifecycle");
  mix->require_subcommand(1);
  std::uint64_t mix_id = 0;
  std::uint64_t denomination = 0, amount = 0;
  std::size_t capacity = 0;
  std::string account, pk_arg, payout;

  auto* create = mix->add_subcommand("create", "Create a pool");
  create->add_option("--denomination", denomination)->required();
  create->add_option("--capacity", capacity)->required();
  create->callback([&] {
    action = [&] {
      StateLock lock(g.state, true);
      MixContract c = load_contract(g);
      std::uint64_t id = c.create(denomination, capacity);
      save_contract(g, c);
      out << id << "\n";
      return int{kOk};
    };
  });

  auto* fund = mix->add_subcommand("fund", "Credit an account");
  fund->add_option("--account", account)->required();
  fund->add_option("--amount", amount)->required();
  fund->callback([&] {
    action = [&] {
      StateLock lock(g.state, true);
      MixContract c = load_contract(g);
      c.fund_account(account, amount);
      save_contract(g, c);
      out << account << " " << c.balance_of(account) << "\n";
      return int{kOk};
    };
  });

  auto* deposit = mix->add_subcommand("deposit", "Deposit a public key into a pool");
  deposit->add_option("--mix", mix_id)->required();
  deposit->add_option("--pk", pk_arg, "Public key hex or @file")->required();
  deposit->add_option("--from", account)->required();
  deposit->callback([&] {
    action = [&] {
      StateLock lock(g.state, true);
      MixContract c = load_contract(g);
      Point pk = parse_point(c.params().curve, "--pk", value_or_file(pk_arg));
      DepositReceipt r = c.deposit(mix_id, pk, account);
      save_contract(g, c);
      out << "position=" << r.position << " phase=" << to_string(r.phase) << "\n";
      return int{kOk};
    };
  });

  auto* ring = mix->add_subcommand("ring", "Print a published ring");
  ring->add_option("--mix", mix_id)->required();
  ring->callback([&] {
    action = [&] {
      StateLock lock(g.state, false);
      MixContract c = load_contract(g);
      MixState s = c.state(mix_id);
      if (!s.ring) throw MixerError(MixErrorCode::kWrongPhase, "ring not published yet");
      out << ring_text(c.params().curve, *s.ring);
      return int{kOk};
    };
  });

  auto* msign = mix->add_subcommand("sign", "Sign a withdrawal for a pool");
  msign->add_option("--mix", mix_id)->required();
  msign->add_option("--key", key_path)->required();
  msign->add_option("--payout", payout)->required();
  msign->callback([&] {
    action = [&] {
      StateLock lock(g.state, false);
      MixContract c = load_contract(g);
      MixState s = c.state(mix_id);
      if (!s.ring) throw MixerError(MixErrorCode::kWrongPhase, "ring not published yet");
      Scalar sk = load_secret(c.params().curve, key_path);
      auto rng = make_rng(g);
      out << to_hex(sign_withdrawal(c.params(), mix_id, *s.ring, sk, payout, *rng)) << "\n";
      return int{kOk};
    };
  });

  auto* withdraw = mix->add_subcommand("withdraw", "Submit a withdrawal");
  withdraw->add_option("--mix", mix_id)->required();
  withdraw->add_option("--sig", sig_arg, "Signature hex or @file")->required();
  withdraw->add_option("--payout", payout)->required();
  withdraw->callback([&] {
    action = [&] {
      StateLock lock(g.state, true);
      MixContract c = load_contract(g);
      Bytes sig;
      try {
        sig = from_hex(value_or_file(sig_arg));
      } catch (const DecodeError&) {
        out << to_string(WithdrawStatus::kMalformed) << "\n";
        return int{kWithdrawMalformed};
      }
      WithdrawStatus st = c.withdraw(mix_id, sig, payout);
      if (st == WithdrawStatus::kAccepted) save_contract(g, c);
      out << to_string(st) << "\n";
      return withdraw_exit(st);
    };
  });

  auto* status = mix->add_subcommand("status", "Show pool state");
  status->add_option("--mix", mix_id)->required();
  status->callback([&] {
    action = [&] {
      StateLock lock(g.state, false);
      MixContract c = load_contract(g);
      MixState s = c.state(mix_id);
      out << "mix=" << s.mix_id << " phase=" << to_string(s.phase) << " deposits=" << s.deposits.size() << "/"
          << s.capacity << " tags=" << s.seen_tags.size() << " denomination=" << s.denomination
          << " balance=" << s.balance() << "\n";
      return int{kOk};
    };
  });

  auto* closecmd = mix->add_subcommand("close", "Close a filling pool and refund depositors");
  closecmd->add_option("--mix", mix_id)->required();
  closecmd->callback([&] {
    action = [&] {
      StateLock lock(g.state, true);
      MixContract c = load_contract(g);
      c.close(mix_id);
      save_contract(g, c);
      out << "mix=" << mix_id << " phase=CLOSED\n";
      return int{kOk};
    };
  });

  auto* attack = app.add_subcommand("attack", "Deanonymization demos");
  attack->require_subcommand(1);
  MessageArgs attack_msg;
  std::vector<std::string> reveal_paths;

  auto* naive = attack->add_subcommand("naive-hash", "Recover the signer under the generator-multiplication hash");
  naive->add_option("--ring", ring_path)->required();
  naive->add_option("--sig", sig_arg)->required();
  add_message_options(naive, attack_msg);
  naive->callback([&] {
    action = [&] {
      const Curve& curve = Curve::by_id(g.curve);
      PublicParams pp{128, curve, parse_hash_variant(g.hash), "sha256", true};
      Ring r = load_ring(curve, ring_path);
      Bytes msg = message_of(attack_msg);
      Signature sig = decode_signature(curve, hex_arg("--sig", sig_arg), r, msg);
      auto found = attack_naive_hash(pp, r, sig, msg);
      if (!found) {
        out << "NO_MATCH\n";
        return int{kReject};
      }
      out << "RECOVERED index=" << *found << " pk=" << to_hex(curve.encode(r[*found])) << "\n";
      return int{kOk};
    };
  });

  auto* reveal = attack->add_subcommand("tag-reveal", "Shrink the anonymity set with revealed keys");
  reveal->add_option("--ring", ring_path)->required();
  reveal->add_option("--sig", sig_arg)->required();
  reveal->add_option("--reveal", reveal_paths, "Revealed secret key files");
  add_message_options(reveal, attack_msg);
  reveal->callback([&] {
    action = [&] {
      PublicParams pp = params_of(g);
      Ring r = load_ring(pp.curve, ring_path);
      Bytes msg = message_of(attack_msg);
      Signature sig = decode_signature(pp.curve, hex_arg("--sig", sig_arg), r, msg);
      std::vector<Scalar> sks;
      for (const std::string& p : reveal_paths) sks.push_back(load_secret(pp.curve, p));
      std::vector<std::size_t> left = attack_tag_reveal(pp, r, sig, msg, sks);
      out << "anonymity_set=" << format_indices(left) << " size=" << left.size() << "\n";
      return int{kOk};
    };
  });

  auto* bench = app.add_subcommand("bench", "Time sign and verify per ring size");
  std::vector<std::size_t> sizes{2, 4, 8, 16};
  int iterations = 3;
  bench->add_option("--sizes", sizes)->delimiter(',');
  bench->add_option("--iterations", iterations)->check(CLI::PositiveNumber);
  bench->callback([&] {
    action = [&] {
      PublicParams pp = params_of(g);
      SeededRng rng(g.seed.value_or(0));
      out << std::left << std::setw(6) << "n" << std::setw(12) << "sig_bytes" << std::setw(12) << "sign_ms"
          << "verify_ms\n";
      for (std::size_t n : sizes) {
        if (n < 2) throw InputError("ring size must be at least 2");
        std::vector<KeyPair> keys;
        std::vector<Point> pks;
        for (std::size_t i = 0; i < n; ++i) {
          keys.push_back(ring_gen(pp, rng));
          pks.push_back(keys.back().pk);
        }
        Ring r = Ring::canonical(pp.curve, pks);
        Bytes msg = to_bytes("bench");
        using clock = std::chrono::steady_clock;
        std::chrono::duration<double, std::milli> sign_t{0}, verify_t{0};
        std::size_t bytes = 0;
        for (int it = 0; it < iterations; ++it) {
          auto t0 = clock::now();
          Signature sig = ring_sign(pp, keys[it % n].sk, r, msg, rng);
          auto t1 = clock::now();
          bool ok = ring_verify(pp, r, msg, sig);
          auto t2 = clock::now();
          if (!ok) throw Error("bench signature failed to verify");
          sign_t += t1 - t0;
          verify_t += t2 - t1;
          bytes = encode_signature(pp.curve, sig).size();
        }
        out << std::left << std::setw(6) << n << std::setw(12) << bytes << std::setw(12) << std::fixed
            << std::setprecision(3) << sign_t.count() / iterations << verify_t.count() / iterations << "\n";
      }
      return int{kOk};
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  g.curve_given = curve_opt->count() > 0;
  g.hash_given = hash_opt->count() > 0;

  try {
    return action ? action() : int{kUsage};
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const StateError& e) {
    err << "error: " << e.what() << "\n";
    return kStateError;
  } catch (const MixerError& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == MixErrorCode::kCorruptState ? kStateError : kRefused;
  } catch (const DecodeError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CurveError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SchemeError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kStateError;
  }
}

}  // namespace urs::cli
