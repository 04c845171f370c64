// include/mcse/cli.h

// Copyright 2026  mcse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MCSE_CLI_H_
#define MCSE_CLI_H_

namespace mcse {

// Entry point of the `mcse` tool (subcommands: enhance, mix, rover, score,
// defaults). Exit codes: 0 success, 1 usage, 2 validation, 3 runtime.
int RunCli(int argc, const char* const* argv);

}  // namespace mcse

#endif  // MCSE_CLI_H_
