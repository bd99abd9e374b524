// Copyright 2026 The nbspectra Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Runs the command-line tool in a scratch directory.

#ifndef NBSPECTRA_TESTS_SUPPORT_CLI_HPP
#define NBSPECTRA_TESTS_SUPPORT_CLI_HPP

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace nbspectra::testing {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

class CliSandbox {
 public:
  explicit CliSandbox(const std::string& name)
      : dir_(std::filesystem::temp_directory_path() / ("nbspectra_" + name + "_" + std::to_string(::getpid()))) {
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  ~CliSandbox() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }

  std::filesystem::path path(const std::string& file) const { return dir_ / file; }

  void write(const std::string& file, const std::string& content) const {
    std::ofstream(path(file), std::ios::binary) << content;
  }

  std::string read(const std::string& file) const {
    std::ifstream in(path(file), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  /// `env` is a prefix such as "NBSPECTRA_SEED=5"; empty unsets the variable.
  CliResult run(const std::string& args, const std::string& env = "") const {
    const std::string cmd = "cd '" + dir_.string() + "' && " + (env.empty() ? "env -u NBSPECTRA_SEED " : "env " + env + " ") +
                            "'" NBSPECTRA_CLI "' " + args + " > stdout.txt 2> stderr.txt";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read("stdout.txt");
    r.err = read("stderr.txt");
    return r;
  }

 private:
  std::filesystem::path dir_;
};

inline const char* kK4 = "# n=4\n0\t1\n0\t2\n0\t3\n1\t2\n1\t3\n2\t3\n";
inline const char* kK33 = "# n=6\n0\t3\n0\t4\n0\t5\n1\t3\n1\t4\n1\t5\n2\t3\n2\t4\n2\t5\n";
inline const char* kP3 = "# n=3\n0\t1\n1\t2\n";

}  // namespace nbspectra::testing

#endif  // NBSPECTRA_TESTS_SUPPORT_CLI_HPP
