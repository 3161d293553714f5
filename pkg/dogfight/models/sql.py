"""SQLAlchemy tables for the optional run ledger."""

from datetime import datetime, timezone
from typing import List, Optional

from sqlalchemy import JSON, Boolean, DateTime, Float, ForeignKey, Integer, String
from sqlalchemy.orm import Mapped, mapped_column, relationship

from dogfight.database import Base


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


class BatteryRow(Base):
    """One (problem, algorithms, seeds) battery."""
    __tablename__ = "batteries"

    id: Mapped[int] = mapped_column(Integer, primary_key=True, index=True)
    name: Mapped[str] = mapped_column(String(128))
    problem: Mapped[str] = mapped_column(String(128), index=True)
    root_seed: Mapped[int] = mapped_column(Integer)
    runs: Mapped[int] = mapped_column(Integer)
    created_at: Mapped[datetime] = mapped_column(DateTime, default=_utcnow)

    run_rows: Mapped[List["RunRow"]] = relationship(
        back_populates="battery",
        cascade="all, delete-orphan",
        order_by="RunRow.run_index",
    )


class RunRow(Base):
    """
    Final outcome of one optimizer run.

    Curves are not stored; they live in the CSV artifacts.
    """
    __tablename__ = "runs"

    id: Mapped[int] = mapped_column(Integer, primary_key=True, index=True)
    battery_id: Mapped[int] = mapped_column(Integer, ForeignKey("batteries.id"), index=True)
    algorithm: Mapped[str] = mapped_column(String(64), index=True)
    # 64-bit seeds overflow SQLite's signed integer; kept as text
    seed: Mapped[str] = mapped_column(String(32))
    run_index: Mapped[int] = mapped_column(Integer)
    best_value: Mapped[Optional[float]] = mapped_column(Float, nullable=True)
    feasible: Mapped[bool] = mapped_column(Boolean, default=False)
    evaluations: Mapped[int] = mapped_column(Integer, default=0)
    elapsed: Mapped[float] = mapped_column(Float, default=0.0)
    truncated: Mapped[bool] = mapped_column(Boolean, default=False)
    best_point: Mapped[Optional[list]] = mapped_column(JSON, nullable=True)

    battery: Mapped["BatteryRow"] = relationship(back_populates="run_rows")
