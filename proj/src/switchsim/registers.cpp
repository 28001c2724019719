#include "netprune/switchsim/registers.hpp"

#include <stdexcept>

#include "netprune/core/errors.hpp"

namespace netprune {

RegisterArray::RegisterArray(std::string name, std::size_t cells, unsigned cell_bits, std::size_t max_accesses)
    : name_(std::move(name)), cells_(cells), bits_(cell_bits), max_accesses_(max_accesses) {
  if (cells == 0) throw std::invalid_argument("register array " + name_ + " has no cells");
  if (!(cell_bits == 128 || (cell_bits >= 1 && cell_bits <= 64 && 64 % cell_bits == 0))) {
    throw std::invalid_argument("register cell width must divide 64 or be 128");
  }
  if (cell_bits == 128) {
    words_.assign(cells * 2, 0);
  } else {
    const std::size_t per_word = 64 / cell_bits;
    words_.assign((cells + per_word - 1) / per_word, 0);
  }
}

void RegisterArray::touch(std::size_t index, std::uint64_t epoch) {
  if (index >= cells_) {
    throw InvariantError("register " + name_ + ": index " + std::to_string(index) + " beyond " +
                         std::to_string(cells_) + " cells");
  }
  if (epoch != epoch_) {
    epoch_ = epoch;
    accesses_ = 0;
  }
  if (++accesses_ > max_accesses_) {
    throw InvariantError("register " + name_ + ": " + std::to_string(accesses_) + " accesses by one packet, limit " +
                         std::to_string(max_accesses_));
  }
}

std::uint64_t RegisterArray::load(std::size_t index, std::size_t word) const {
  if (bits_ == 128) return words_[index * 2 + word];
  if (bits_ == 64) return words_[index];
  const std::size_t per_word = 64 / bits_;
  const unsigned shift = static_cast<unsigned>(index % per_word) * bits_;
  return (words_[index / per_word] >> shift) & ((std::uint64_t{1} << bits_) - 1);
}

void RegisterArray::store(std::size_t index, std::size_t word, std::uint64_t value) {
  if (bits_ == 128) {
    words_[index * 2 + word] = value;
    return;
  }
  if (bits_ == 64) {
    words_[index] = value;
    return;
  }
  const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
  if (value & ~mask) {
    throw InvariantError("register " + name_ + ": value does not fit " + std::to_string(bits_) + "-bit cell");
  }
  const std::size_t per_word = 64 / bits_;
  const unsigned shift = static_cast<unsigned>(index % per_word) * bits_;
  auto& w = words_[index / per_word];
  w = (w & ~(mask << shift)) | (value << shift);
}

std::uint64_t RegisterArray::read(std::size_t index, std::size_t word) const {
  if (index >= cells_ || word >= words_per_cell()) throw std::out_of_range("register read out of range");
  return load(index, word);
}

void RegisterArray::write(std::size_t index, std::uint64_t value, std::size_t word) {
  if (index >= cells_ || word >= words_per_cell()) throw std::out_of_range("register write out of range");
  store(index, word, value);
}

}  // namespace netprune
