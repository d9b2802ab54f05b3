"""Journal of verification runs and fuzz counterexamples."""
from sqlalchemy import create_engine, Column, Integer, String, Float, DateTime, Boolean, Text, ForeignKey
from sqlalchemy.orm import declarative_base, sessionmaker
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, List, Dict, Any
import hashlib
import json

Base = declarative_base()


class VerificationRun(Base):
    """One verify, decompose or fuzz invocation."""
    __tablename__ = 'verification_runs'

    id = Column(Integer, primary_key=True, autoincrement=True)
    command = Column(String, nullable=False, index=True)  # 'verify', 'decompose', 'fuzz'
    map_digest = Column(String, index=True)  # sha256 of the map document, None for fuzz
    seed = Column(Integer)
    tolerance = Column(Float)
    passed = Column(Boolean, nullable=False)
    report_json = Column(Text)
    created_at = Column(DateTime, default=lambda: datetime.now(timezone.utc), index=True)


class Counterexample(Base):
    """A failed invariant of one fuzz trial."""
    __tablename__ = 'counterexamples'

    id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(Integer, ForeignKey('verification_runs.id'), nullable=False, index=True)
    trial = Column(Integer)
    trial_seed = Column(Integer)
    description = Column(Text)
    invariant = Column(String, index=True)
    residual = Column(Float)  # None when the trial raised


def document_digest(document: Dict[str, Any]) -> str:
    """Stable sha256 of a JSON document."""
    canonical = json.dumps(document, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


class Database:
    """Journal manager."""

    def __init__(self, db_path: str = "data/homcheck.db"):
        """Initialize database connection.

        Args:
            db_path: Path to SQLite database file
        """
        Path(db_path).parent.mkdir(parents=True, exist_ok=True)

        self.engine = create_engine(f'sqlite:///{db_path}', echo=False)
        Base.metadata.create_all(self.engine)
        self.Session = sessionmaker(bind=self.engine)

    def get_session(self):
        """Get a database session."""
        return self.Session()

    def record_run(
        self,
        command: str,
        report: Dict[str, Any],
        passed: bool,
        seed: Optional[int] = None,
        tolerance: Optional[float] = None,
        map_document: Optional[Dict[str, Any]] = None
    ) -> int:
        """Store a run with its report; returns the run id."""
        session = self.get_session()
        try:
            run = VerificationRun(
                command=command,
                map_digest=document_digest(map_document) if map_document is not None else None,
                seed=seed,
                tolerance=tolerance,
                passed=passed,
                report_json=json.dumps(report),
            )
            session.add(run)
            session.commit()
            return run.id
        except Exception as e:
            session.rollback()
            raise e
        finally:
            session.close()

    def record_counterexamples(self, run_id: int, counterexamples: List[Dict[str, Any]]) -> None:
        session = self.get_session()
        try:
            for data in counterexamples:
                session.add(Counterexample(run_id=run_id, **data))
            session.commit()
        except Exception as e:
            session.rollback()
            raise e
        finally:
            session.close()

    def recent_runs(self, limit: int = 10) -> List[Dict[str, Any]]:
        """Most recent runs first."""
        session = self.get_session()
        try:
            runs = session.query(VerificationRun).order_by(
                VerificationRun.created_at.desc(), VerificationRun.id.desc()
            ).limit(limit).all()
            return [
                {
                    'id': r.id,
                    'command': r.command,
                    'map_digest': r.map_digest,
                    'seed': r.seed,
                    'tolerance': r.tolerance,
                    'passed': r.passed,
                    'report': json.loads(r.report_json) if r.report_json else None,
                    'created_at': r.created_at,
                }
                for r in runs
            ]
        finally:
            session.close()

    def counterexamples_for(self, run_id: int) -> List[Dict[str, Any]]:
        session = self.get_session()
        try:
            rows = session.query(Counterexample).filter(
                Counterexample.run_id == run_id
            ).order_by(Counterexample.trial, Counterexample.id).all()
            return [
                {
                    'trial': c.trial,
                    'trial_seed': c.trial_seed,
                    'description': c.description,
                    'invariant': c.invariant,
                    'residual': c.residual,
                }
                for c in rows
            ]
        finally:
            session.close()
