"""Run-ledger database configuration and connection management."""

from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import DeclarativeBase, sessionmaker

from dogfight.config import settings


def make_engine(url: str = settings.RESULTS_DB_URL) -> Engine:
    """Synchronous engine; SQLite URLs may be shared across the runner's threads."""
    connect_args = {"check_same_thread": False} if url.startswith("sqlite") else {}
    return create_engine(url, echo=settings.DEBUG, connect_args=connect_args)


engine = make_engine()

SessionLocal = sessionmaker(bind=engine, expire_on_commit=False)


class Base(DeclarativeBase):
    """Base class for ledger tables."""
    pass


def get_session_factory(url: str = None) -> sessionmaker:
    """Session factory for the default ledger, or for another database URL."""
    if url is None or url == settings.RESULTS_DB_URL:
        return SessionLocal
    return sessionmaker(bind=make_engine(url), expire_on_commit=False)


def init_db(session_factory: sessionmaker = None) -> None:
    """Create ledger tables if they do not exist."""
    # registers the mapped classes on Base.metadata
    from dogfight.models import sql  # noqa: F401

    bind = (session_factory or SessionLocal).kw["bind"]
    Base.metadata.create_all(bind)
