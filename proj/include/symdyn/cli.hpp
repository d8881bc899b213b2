#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symdyn::cli {

// Exit codes: 0 all certificates pass, 1 a certificate failed (witness in the
// report), 2 usage or parse error, 3 resource cap hit.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace symdyn::cli
