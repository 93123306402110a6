// Command-line front end. `run` never touches the process streams, so tests
// can drive it directly.

#ifndef PROVLAB_TOOLS_CLI_HPP_
#define PROVLAB_TOOLS_CLI_HPP_

#include <string>
#include <vector>

namespace provlab::cli {

struct Result {
  int code = 0;  // 0 ok, 1 domain error, 2 usage error
  std::string out;
  std::string err;
};

// argv excludes the program name. `env_mode` is the value of the output
// mode environment variable ("json" or "text"; empty means text).
Result run(const std::vector<std::string> &argv, const std::string &env_mode = "");

}  // namespace provlab::cli

#endif
