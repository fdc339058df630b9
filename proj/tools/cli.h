// Copyright 2026 The hwalks Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HWALKS_TOOLS_CLI_H_
#define HWALKS_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "hwalks/ncseq.h"

namespace hwalks::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kUsage = 2,
  kResourceCap = 3,
};

// "builtin:maximal:<ord>", "builtin:minimal-fs:<ord>" (the "builtin:" prefix
// is optional) or a path to a spec file. `n` sets the dimension of builtins
// and must not exceed a file's dimension; 0 means "from the source".
NCSeqPtr LoadSeq(const std::string& source, int n);

// Runs one command line; args excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace hwalks::cli

#endif  // HWALKS_TOOLS_CLI_H_
