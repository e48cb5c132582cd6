"""Frozen reference values used by several test modules."""

# Published 15-to-1 resource table: (log10(1/p_g), log10(1/p_out)) -> (volume, distances).
BK_TABLE = {
    (3, 3): (1.1e6, (13,)), (3.5, 3): (3.5e5, (9,)),
    (3, 4): (1.5e6, (15,)), (3.5, 4): (3.5e5, (9,)), (4, 4): (1.4e5, (7,)), (4.5, 4): (6.6e4, (5,)),
    (3, 5): (1.1e7, (11, 17)), (3.5, 5): (5.5e5, (11,)), (4, 5): (3.4e5, (9,)), (4.5, 5): (1.4e5, (7,)), (5, 5): (6.6e4, (5,)),
    (3, 6): (1.2e7, (11, 19)), (3.5, 6): (3.2e6, (7, 13)), (4, 6): (3.4e5, (9,)), (4.5, 6): (1.4e5, (7,)), (5, 6): (6.6e4, (5,)),
    (3, 7): (2.0e7, (13, 21)), (3.5, 7): (3.5e6, (7, 15)), (4, 7): (5.3e5, (11,)), (4.5, 7): (3.3e5, (9,)), (5, 7): (1.4e5, (7,)),
    (3, 8): (2.1e7, (13, 23)), (3.5, 8): (6.5e6, (9, 15)), (4, 8): (2.7e6, (7, 11)), (4.5, 8): (3.3e5, (9,)), (5, 8): (1.4e5, (7,)),
    (3, 9): (2.4e7, (13, 27)), (3.5, 9): (7.3e6, (9, 17)), (4, 9): (3.1e6, (7, 13)), (4.5, 9): (1.3e6, (5, 9)), (5, 9): (3.3e5, (9,)),
    (3, 10): (3.1e7, (15, 27)), (3.5, 10): (7.9e6, (9, 19)), (4, 10): (3.1e6, (7, 13)), (4.5, 10): (1.5e6, (5, 11)), (5, 10): (3.3e5, (9,)),
    (3, 11): (3.5e7, (15, 31)), (3.5, 11): (7.9e6, (9, 19)), (4, 11): (3.4e6, (7, 15)), (4.5, 11): (1.5e6, (5, 11)), (5, 11): (1.3e6, (5, 9)),
    (3, 12): (3.1e8, (11, 15, 33)), (3.5, 12): (1.2e7, (11, 21)), (4, 12): (3.4e6, (7, 15)), (4.5, 12): (1.9e6, (5, 13)), (5, 12): (1.5e6, (5, 11)),
    (3, 13): (3.2e8, (11, 17, 33)), (3.5, 13): (1.3e7, (11, 23)), (4, 13): (4.2e6, (7, 17)), (4.5, 13): (3.1e6, (7, 13)), (5, 13): (1.5e6, (5, 11)),
    (3, 14): (3.3e8, (11, 17, 35)), (3.5, 14): (1.3e7, (11, 23)), (4, 14): (7.1e6, (9, 17)), (4.5, 14): (3.1e6, (7, 13)), (5, 14): (1.5e6, (5, 11)),
    (3, 15): (3.4e8, (11, 19, 37)), (3.5, 15): (2.1e7, (13, 25)), (4, 15): (7.7e6, (9, 19)), (4.5, 15): (3.4e6, (7, 15)), (5, 15): (1.9e6, (5, 13)),
}

PG_EXPONENTS = (3, 3.5, 4, 4.5, 5)
TARGET_EXPONENTS = tuple(range(3, 16))
