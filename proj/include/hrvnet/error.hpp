#pragma once

#include <stdexcept>
#include <string>

namespace hrvnet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input-file failure; the message always names the offending line.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line_no)
        : Error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    std::size_t line;
};

struct TrainDivergence : Error {
    TrainDivergence(int at_epoch)
        : Error("training diverged (non-finite loss) at epoch " + std::to_string(at_epoch)),
          epoch(at_epoch) {}
    int epoch;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw Error(what);
}

}  // namespace hrvnet
