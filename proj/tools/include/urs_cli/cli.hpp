#ifndef URS_CLI_CLI_HPP_
#define URS_CLI_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace urs::cli {

// Exit codes. Withdraw rejections get one code per mixer status.
enum ExitCode : int {
  kOk = 0,
  kReject = 1,
  kUsage = 2,
  kStateError = 3,
  kRefused = 4,
  kWithdrawBadSignature = 10,
  kWithdrawWrongRing = 11,
  kWithdrawTagReuse = 12,
  kWithdrawWrongPhase = 13,
  kWithdrawMalformed = 14,
};

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace urs::cli

#endif  // URS_CLI_CLI_HPP_
