#pragma once

#include <stdexcept>
#include <string>

namespace prpsk {

enum class Errc {
    non_positive,
    s_less_than_3,
    g_does_not_divide_p,
    m_not_power_of_two,
    length_not_divisible,
    out_of_order_feed,
    empty_spec,
    empty_input,
    not_locked,
    length_mismatch,
    bad_file,
};

/// Library error carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace prpsk
