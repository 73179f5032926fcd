#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arimat::cli {

// Runs one command. Exit status: 0 on success, 1 on usage or parse errors,
// 2 on computed negative results (NotRegular, NoMultiplicativeBasis, failed
// GP or axiom checks), which still print their certificate document.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace arimat::cli
