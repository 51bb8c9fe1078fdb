"""The ten most likely IPADs and how the exploration closes each entry."""
from sigmagroups.explorer import Budget, entries_from, explore_ipads, format_decimal
from sigmagroups.ipad import Ipad

targets = [Ipad.parse(t) for t in [
    "[[3,3]; [3,3]^3 [3,9]]",
    "[[3,3]; [3,3]^3 [3,3,3]]",
    "[[3,3]; [3,3]^3 [9,9]]",
    "[[3,9]; [3,3,3] [3,9]^2 [3,27]]",
    "[[3,3]; [3,3,3] [3,9]^3]",
    "[[3,3]; [3,3]^3 [9,27]]",
    "[[3,9]; [3,3,9] [3,9]^3]",
    "[[3,9]; [3,3,3] [3,3,9] [3,9]^2]",
    "[[3,3]; [3,3,3]^2 [3,9]^2]",
    "[[3,3]; [3,3,3]^3 [3,9]]",
]]

# a tiny budget: only the order-81 entries are closed
for e in entries_from(explore_ipads(3, 2, Budget(max_order=4), targets), targets)[:4]:
    print(format_decimal(e.measure), e.status, e.ipad)
print()

ex = explore_ipads(3, 2, Budget(max_order=8), targets)
print("visited", ex.visited, "pruned", len(ex.pruned), "open", len(ex.open_nodes))
for e in entries_from(ex, targets):
    print(f"{str(e.measure):>14} {format_decimal(e.measure)} {e.status:<11} {e.ipad}  <- {' '.join(e.nodes)}")

# credited and pruned mass together account for everything
print("mass:", sum(m for _, m, _, _ in ex.credits) + sum(m for _, m, _ in ex.pruned))
