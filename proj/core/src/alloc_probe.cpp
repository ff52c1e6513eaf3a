#include "sxrc/alloc_probe.hpp"

namespace sxrc {
namespace {
std::atomic<SeqAllocObserver*> g_observer{nullptr};
}  // namespace

void set_seq_alloc_observer(SeqAllocObserver* observer) noexcept {
  g_observer.store(observer, std::memory_order_release);
}

SeqAllocObserver* seq_alloc_observer() noexcept {
  return g_observer.load(std::memory_order_acquire);
}

SeqAllocProbe::SeqAllocProbe() noexcept : previous_(seq_alloc_observer()) {
  set_seq_alloc_observer(this);
}

SeqAllocProbe::~SeqAllocProbe() { set_seq_alloc_observer(previous_); }

void SeqAllocProbe::on_alloc(std::size_t bytes) noexcept {
  allocated_.fetch_add(bytes);
  count_.fetch_add(1);
  auto now = live_.fetch_add(static_cast<std::int64_t>(bytes)) + static_cast<std::int64_t>(bytes);
  auto peak = peak_.load();
  while (peak < now && !peak_.compare_exchange_weak(peak, now)) {
  }
}

void SeqAllocProbe::on_free(std::size_t bytes) noexcept {
  live_.fetch_sub(static_cast<std::int64_t>(bytes));
}

}  // namespace sxrc
