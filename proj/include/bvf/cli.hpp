#pragma once

#include <iosfwd>

namespace bvf {

// Full command-line surface; writes to the given streams and returns the
// process exit code: 0 success, 1 broken invariant or suite violation,
// 2 usage or input error.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

} // namespace bvf
