"""Uniform pass/fail reports for the verification suites."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Report:
    """Outcome of one degree-truncated verification.

    witness, present only on failure, carries the identity that broke and a
    printable description of the offending elements and both sides.
    """

    check: str
    instance: str
    N: int
    status: str
    witness: dict | None = None

    @property
    def passed(self):
        return self.status == "pass"

    def to_json(self):
        out = {"check": self.check, "instance": self.instance,
               "N": self.N, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def __str__(self):
        head = "%s[%s, N=%d]: %s" % (self.check, self.instance, self.N, self.status)
        if self.witness is None:
            return head
        detail = ", ".join("%s=%s" % (k, v) for k, v in self.witness.items())
        return head + " (" + detail + ")"


def passing(check, instance, N):
    return Report(check, instance, N, "pass")


def failing(check, instance, N, **witness):
    return Report(check, instance, N, "fail", {k: str(v) for k, v in witness.items()})
