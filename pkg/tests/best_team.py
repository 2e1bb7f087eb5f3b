"""Expected per-hero rows of the known optimal roster team: (contribution, power, sum)."""

ROWS = {
    "broodmother": (3.0, 3, 6.0),
    "disraptor": (4.0, 4, 8.0),
    "dragon knight": (5.0, 5, 10.0),
    "lich": (4.0, 5, 9.0),
    "medusa": (4.0, 5, 9.0),
    "necrophos": (4.0, 4, 8.0),
    "sand king": (4.0, 5, 9.0),
    "sven": (4.0, 4, 8.0),
    "troll warlord": (4.5, 5, 9.5),
    "witch doctor": (2.2, 2, 4.2),
}
TOTAL = 80.7
