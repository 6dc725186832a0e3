#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace revex::verify {

struct SubprocessResult {
  std::string stdout_text;
  bool timed_out = false;
  int exit_code = -1;
};

// Spawns argv, writes `input` to its stdin, closes it, and reads stdout until
// EOF or the deadline (the child is killed on timeout). One-shot by design:
// the solver protocol sends a complete script and reads a complete reply.
SubprocessResult run_subprocess(const std::vector<std::string>& argv, const std::string& input,
                                std::chrono::milliseconds timeout);

// Directory of the running executable (for locating the bundled solver).
std::string executable_dir();
// Resolves a program name against PATH; empty when not found.
std::string find_in_path(const std::string& name);

}  // namespace revex::verify
