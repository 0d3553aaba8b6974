"""The existence table for non-simple homotopy equivalent manifolds.

The rows are stored as data.  The only logic here is profile validation
and a few consistency checks between columns.
"""
from dataclasses import dataclass

YES, NO, OPEN = "Yes", "No", "Open"
ALL_N = "all n"
N_GE_5 = "n >= 5"
N_9_GE_11 = "n = 9, >= 11"
NO_RANGE = "-"

COLUMNS = ("Mhs", "Mhcob", "Mhshcob")


@dataclass(frozen=True)
class Answer:
    status: str
    dims: str

    def __str__(self):
        return self.status if self.dims == NO_RANGE else f"{self.status} ({self.dims})"

    def to_json(self):
        return {"answer": self.status, "dimensions": self.dims}


# (In = 0, Tate = 0, psi = 0) -> (Mhs, Mhcob, Mhshcob)
_ROWS = {
    (True, True, True): (Answer(NO, ALL_N), Answer(NO, ALL_N), Answer(NO, ALL_N)),
    (True, False, False): (Answer(YES, N_GE_5), Answer(NO, ALL_N), Answer(YES, N_GE_5)),
    (True, False, True): (Answer(OPEN, NO_RANGE), Answer(NO, ALL_N), Answer(OPEN, NO_RANGE)),
    (False, True, True): (Answer(YES, N_9_GE_11), Answer(YES, N_9_GE_11), Answer(NO, N_GE_5)),
    (False, False, False): (Answer(YES, N_GE_5), Answer(YES, N_9_GE_11), Answer(YES, N_GE_5)),
    (False, False, True): (Answer(YES, N_9_GE_11), Answer(YES, N_9_GE_11), Answer(OPEN, NO_RANGE)),
}

ROW_ORDER = [(True, True, True), (True, False, False), (True, False, True),
             (False, True, True), (False, False, False), (False, False, True)]


class InvalidProfile(ValueError):
    pass


@dataclass(frozen=True)
class GroupProfile:
    """Which of I_n(G, w), the Tate group of Wh(G, w) and psi vanish."""
    In_zero: bool
    Tate_zero: bool
    psi_zero: bool

    def __post_init__(self):
        if not self.psi_zero and self.Tate_zero:
            raise InvalidProfile("psi maps into the Tate group, so psi != 0 needs a nonzero Tate group")

    @property
    def J_zero(self):
        return self.In_zero and self.Tate_zero

    def key(self):
        return (self.In_zero, self.Tate_zero, self.psi_zero)

    def to_json(self):
        return {"In": "=0" if self.In_zero else "!=0", "tate": "=0" if self.Tate_zero else "!=0",
                "psi": "=0" if self.psi_zero else "!=0"}


def existence_answers(p):
    return dict(zip(COLUMNS, _ROWS[p.key()]))


def all_rows():
    return [(GroupProfile(*k), existence_answers(GroupProfile(*k))) for k in ROW_ORDER]


def consistency_problems():
    """Cross-column checks on the stored rows; an empty list means consistent."""
    problems = []
    for p, row in all_rows():
        if YES in (row["Mhcob"].status, row["Mhshcob"].status) and row["Mhs"].status != YES:
            problems.append(f"{p.key()}: a Yes in Mhcob or Mhshcob without Mhs Yes")
        if (row["Mhcob"].status == YES) != (not p.In_zero):
            problems.append(f"{p.key()}: Mhcob disagrees with I_n != 0")
        if p.J_zero and any(a.status != NO for a in row.values()):
            problems.append(f"{p.key()}: J_n = 0 but not all No")
    return problems


def format_row(p, row):
    head = "  ".join(f"{k}{v}" for k, v in p.to_json().items())
    cells = "  ".join(f"{c}: {row[c]}" for c in COLUMNS)
    return f"{head}  |  {cells}"
