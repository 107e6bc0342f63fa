#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypersum {

// Message lines emitted verbatim by the command line tool.
inline constexpr const char* kMsgGosperNoClosedForm = "Gosper algorithm: no closed form solution exists";
inline constexpr const char* kMsgGosperNotApplicable = "Gosper algorithm not applicable";
inline constexpr const char* kMsgIllegalArity = "illegal number of arguments";
inline constexpr const char* kMsgZeilbergerOrder = "Zeilberger algorithm fails. Enlarge zb_order";
inline constexpr const char* kMsgZeilbergerNotApplicable = "Zeilberger algorithm not applicable";

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class ArityError : public Error {
public:
    ArityError() : Error(kMsgIllegalArity) {}
};

class DivisionError : public Error {
public:
    using Error::Error;
};

class NotGammaRepresentable : public Error {
public:
    using Error::Error;
};

class NotHypergeometric : public Error {
public:
    using Error::Error;
};

// Gosper: term ratio is not rational.
class GosperNotApplicable : public Error {
public:
    GosperNotApplicable() : Error(kMsgGosperNotApplicable) {}
};

// Gosper: decision procedure proved that no hypergeometric antidifference exists.
class NoClosedForm : public Error {
public:
    NoClosedForm() : Error(kMsgGosperNoClosedForm) {}
};

class ZeilbergerNotApplicable : public Error {
public:
    ZeilbergerNotApplicable() : Error(kMsgZeilbergerNotApplicable) {}
};

class OrderExceeded : public Error {
public:
    OrderExceeded() : Error(kMsgZeilbergerOrder) {}
};

class PoleInRange : public Error {
public:
    using Error::Error;
};

class PoleAtPoint : public Error {
public:
    using Error::Error;
};

class DegenerateRecurrence : public Error {
public:
    using Error::Error;
};

class UnboundedSupport : public Error {
public:
    using Error::Error;
};

}  // namespace hypersum
