from __future__ import annotations

from lottery.degrees import INFINITY, KappaRank
from lottery.kappa import KappaLottery


def omeu(lottery: KappaLottery) -> KappaRank:
    """Order of magnitude expected utility: min over entries of kappa + mu. Lower is better."""
    return min((kappa + mu for mu, kappa in lottery.items), default=INFINITY)
