#pragma once

#include <string>
#include <vector>

namespace hypersum {

/// Collects intermediate results of the summation engines, one line each.
class Trace {
public:
    void line(std::string text) { lines_.push_back(std::move(text)); }
    void assign(const std::string& name, const std::string& value) { line(name + ":= " + value); }
    const std::vector<std::string>& lines() const { return lines_; }

private:
    std::vector<std::string> lines_;
};

}  // namespace hypersum
