#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace netprune {

/// Stateful register memory of one stage. Cells are 1 to 64 bits (packed,
/// width dividing 64) or 128 bits (two words). The data plane may touch the
/// array at most `max_accesses` times per packet: once for an ordinary array,
/// once per ALU for an array the ALUs of a stage share.
class RegisterArray {
 public:
  RegisterArray(std::string name, std::size_t cells, unsigned cell_bits, std::size_t max_accesses = 1);

  const std::string& name() const noexcept { return name_; }
  std::size_t cells() const noexcept { return cells_; }
  unsigned cell_bits() const noexcept { return bits_; }
  std::size_t words_per_cell() const noexcept { return bits_ == 128 ? 2 : 1; }
  std::uint64_t sram_bits() const noexcept { return static_cast<std::uint64_t>(cells_) * bits_; }
  std::size_t max_accesses() const noexcept { return max_accesses_; }

  /// One data-plane read-modify-write of cell `index` by packet `epoch`. `f`
  /// receives the cell words and may change them. Throws InvariantError when
  /// the packet exceeds its accesses, the index is out of range, or a written
  /// value does not fit the cell.
  template <class F>
  void rmw(std::size_t index, std::uint64_t epoch, F&& f) {
    touch(index, epoch);
    std::array<std::uint64_t, 2> tmp{load(index, 0), words_per_cell() == 2 ? load(index, 1) : 0};
    f(std::span<std::uint64_t>(tmp.data(), words_per_cell()));
    store(index, 0, tmp[0]);
    if (words_per_cell() == 2) store(index, 1, tmp[1]);
  }

  /// Control-plane access, not counted.
  std::uint64_t read(std::size_t index, std::size_t word = 0) const;
  void write(std::size_t index, std::uint64_t value, std::size_t word = 0);

 private:
  void touch(std::size_t index, std::uint64_t epoch);
  std::uint64_t load(std::size_t index, std::size_t word) const;
  void store(std::size_t index, std::size_t word, std::uint64_t value);

  std::string name_;
  std::size_t cells_;
  unsigned bits_;
  std::size_t max_accesses_;
  std::vector<std::uint64_t> words_;
  std::uint64_t epoch_ = 0;
  std::size_t accesses_ = 0;
};

}  // namespace netprune
