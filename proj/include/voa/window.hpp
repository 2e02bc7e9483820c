#ifndef VOA_WINDOW_HPP
#define VOA_WINDOW_HPP

#include <stdexcept>
#include <string>

namespace voa {

// Retained energy levels 0..e_max. Operations whose exact result would need
// a level beyond e_max throw OutOfWindowError instead of truncating.
struct TruncationWindow {
  int e_max = 0;

  TruncationWindow() = default;
  explicit TruncationWindow(int e) : e_max(e) {
    if (e < 0) throw std::invalid_argument("TruncationWindow: e_max must be >= 0");
  }

  bool holds_level(int level) const { return level >= 0 && level <= e_max; }
  friend bool operator==(const TruncationWindow& a, const TruncationWindow& b) {
    return a.e_max == b.e_max;
  }
};

class OutOfWindowError : public std::runtime_error {
 public:
  OutOfWindowError(int required_e_max, const std::string& what_op)
      : std::runtime_error("out of window during " + what_op + ": requires e_max >= " +
                           std::to_string(required_e_max)),
        required_e_max_(required_e_max) {}

  int required_e_max() const { return required_e_max_; }

 private:
  int required_e_max_;
};

}  // namespace voa

#endif
