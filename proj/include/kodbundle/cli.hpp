#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace kodbundle::cli {

// exit codes shared by all subcommands
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailure = 1;
inline constexpr int kInputError = 2;
inline constexpr int kNoBundle = 3;

int cmd_decide(const std::string& instance_path, bool json_output, std::ostream& out,
               std::ostream& err);
int cmd_plan(const std::string& instance_path, const std::string& out_path, std::ostream& out,
             std::ostream& err);
int cmd_verify(const std::string& plan_path, const std::string& instance_path, bool json_output,
               std::ostream& out, std::ostream& err);
int cmd_mbound(const std::string& instance_path, bool json_output, std::ostream& out,
               std::ostream& err);
int cmd_corpus(std::uint64_t seed, int count, long max_r, const std::string& out_dir,
               std::ostream& out, std::ostream& err);

}  // namespace kodbundle::cli
