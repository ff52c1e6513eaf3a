#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>

namespace sxrc {

// Observes every allocation and release of BitSeq word storage. This is how the
// in-place claims are checked: a solve that allocates no sequence storage
// reports zero bytes here.
class SeqAllocObserver {
 public:
  virtual ~SeqAllocObserver() = default;
  virtual void on_alloc(std::size_t bytes) noexcept = 0;
  virtual void on_free(std::size_t bytes) noexcept = 0;
};

// Process-wide hook; nullptr disables observation.
void set_seq_alloc_observer(SeqAllocObserver* observer) noexcept;
SeqAllocObserver* seq_alloc_observer() noexcept;

// RAII probe: installs itself for its lifetime and records allocation totals
// relative to the moment it was created. Probes do not nest.
class SeqAllocProbe final : public SeqAllocObserver {
 public:
  SeqAllocProbe() noexcept;
  ~SeqAllocProbe() override;
  SeqAllocProbe(const SeqAllocProbe&) = delete;
  SeqAllocProbe& operator=(const SeqAllocProbe&) = delete;

  void on_alloc(std::size_t bytes) noexcept override;
  void on_free(std::size_t bytes) noexcept override;

  [[nodiscard]] std::uint64_t allocated_bytes() const noexcept { return allocated_.load(); }
  [[nodiscard]] std::uint64_t allocation_count() const noexcept { return count_.load(); }
  // Net live bytes; negative when more was freed than allocated since creation.
  [[nodiscard]] std::int64_t live_delta_bytes() const noexcept { return live_.load(); }
  [[nodiscard]] std::int64_t peak_delta_bytes() const noexcept { return peak_.load(); }

 private:
  SeqAllocObserver* previous_;
  std::atomic<std::uint64_t> allocated_{0};
  std::atomic<std::uint64_t> count_{0};
  std::atomic<std::int64_t> live_{0};
  std::atomic<std::int64_t> peak_{0};
};

namespace detail {

template <class T>
struct TrackedAllocator {
  using value_type = T;

  TrackedAllocator() noexcept = default;
  template <class U>
  TrackedAllocator(const TrackedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    auto* p = static_cast<T*>(::operator new(n * sizeof(T)));
    if (auto* obs = seq_alloc_observer()) obs->on_alloc(n * sizeof(T));
    return p;
  }
  void deallocate(T* p, std::size_t n) noexcept {
    if (auto* obs = seq_alloc_observer()) obs->on_free(n * sizeof(T));
    ::operator delete(p);
  }

  template <class U>
  friend bool operator==(const TrackedAllocator&, const TrackedAllocator<U>&) noexcept {
    return true;
  }
};

}  // namespace detail
}  // namespace sxrc
