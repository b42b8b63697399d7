#include <cstdlib>
#include <stdexcept>

#include "pbim/envs.hpp"

namespace pbim {

KeyDoorGridEnv::Layout KeyDoorGridEnv::Layout::compact4(std::size_t max_steps) {
  Layout l;
  l.width = 4;
  l.height = 4;
  l.wall_col = 2;
  l.door_row = 3;
  l.start = {3, 0};
  l.key = {3, 1};
  l.goal = {3, 3};
  l.max_steps = max_steps;
  return l;
}

KeyDoorGridEnv::Layout KeyDoorGridEnv::Layout::sized(std::size_t width, std::size_t height,
                                                     std::size_t max_steps) {
  Layout l;
  l.width = width;
  l.height = height;
  l.wall_col = width / 2;
  l.door_row = height / 4;
  l.start = {0, 0};
  l.key = {height - 2, width / 2 > 1 ? std::size_t{1} : std::size_t{0}};
  l.goal = {height - 1, width - 1};
  l.max_steps = max_steps;
  return l;
}

KeyDoorGridEnv::KeyDoorGridEnv() : KeyDoorGridEnv(Layout{}) {}

KeyDoorGridEnv::KeyDoorGridEnv(Layout layout) : layout_(layout) {
  const auto& l = layout_;
  if (l.width < 3 || l.height < 2) throw std::invalid_argument("keydoor grid too small");
  if (l.wall_col == 0 || l.wall_col + 1 >= l.width)
    throw std::invalid_argument("keydoor wall column must leave a room on each side");
  if (l.door_row >= l.height) throw std::invalid_argument("keydoor door row off grid");
  auto inside = [&](GridCell c) { return c.row < l.height && c.col < l.width; };
  if (!inside(l.start) || !inside(l.key) || !inside(l.goal))
    throw std::invalid_argument("keydoor start, key and goal must lie on the grid");
  if (l.start.col >= l.wall_col || l.key.col >= l.wall_col)
    throw std::invalid_argument("keydoor start and key must lie left of the wall");
  if (l.goal.col <= l.wall_col) throw std::invalid_argument("keydoor goal must lie right of the wall");
  if (l.max_steps < 1) throw std::invalid_argument("max_steps must be positive");
}

StateId KeyDoorGridEnv::encode(const Decoded& d) const {
  const std::size_t pos = d.cell.row * layout_.width + d.cell.col;
  return StateId{(pos * 2 + (d.carrying ? 1 : 0)) * 2 + (d.door_open ? 1 : 0)};
}

KeyDoorGridEnv::Decoded KeyDoorGridEnv::decode(StateId s) const {
  Decoded d;
  d.door_open = (s.value & 1u) != 0;
  d.carrying = (s.value & 2u) != 0;
  const std::size_t pos = s.value / 4;
  d.cell = {pos / layout_.width, pos % layout_.width};
  return d;
}

std::uint64_t KeyDoorGridEnv::counter_key(StateId s) const { return s.value / 2; }

bool KeyDoorGridEnv::is_wall(GridCell c) const noexcept {
  return c.col == layout_.wall_col && c.row != layout_.door_row;
}

bool KeyDoorGridEnv::is_door(GridCell c) const noexcept {
  return c.col == layout_.wall_col && c.row == layout_.door_row;
}

StepOutcome KeyDoorGridEnv::model(StateId s, ActionId a) const {
  Decoded d = decode(s);
  if (d.cell == layout_.goal) return {s, 0.0, true};

  GridCell target = d.cell;
  switch (a.value) {
    case kUp:
      if (target.row > 0) --target.row;
      break;
    case kDown:
      if (target.row + 1 < layout_.height) ++target.row;
      break;
    case kLeft:
      if (target.col > 0) --target.col;
      break;
    case kRight:
      if (target.col + 1 < layout_.width) ++target.col;
      break;
    case kPickup:
      if (!d.carrying && d.cell == layout_.key) d.carrying = true;
      break;
    case kToggle: {
      const GridCell door{layout_.door_row, layout_.wall_col};
      const auto dr = static_cast<long>(d.cell.row) - static_cast<long>(door.row);
      const auto dc = static_cast<long>(d.cell.col) - static_cast<long>(door.col);
      if (d.carrying && std::labs(dr) + std::labs(dc) == 1) d.door_open = true;
      break;
    }
    default:
      throw std::invalid_argument("keydoor has six actions");
  }

  const bool blocked = is_wall(target) || (is_door(target) && !d.door_open);
  if (!blocked) d.cell = target;
  if (d.cell == layout_.goal) return {encode(d), 1.0, true};
  return {encode(d), 0.0, false};
}

std::unique_ptr<Environment> KeyDoorGridEnv::clone() const {
  return std::make_unique<KeyDoorGridEnv>(*this);
}

}  // namespace pbim
