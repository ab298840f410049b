#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace upb {
namespace cli {

// Exit codes: 0 success / verdict holds, 1 verdict fails (extendible set,
// non-PPT state, equivalence not found, failed verification), 2 usage or
// input errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace cli
}  // namespace upb
