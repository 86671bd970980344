"""Repertory-grid requirements elicitation with a user-based
collaborative-filtering recommender and stakeholder feedback analytics."""

from .domain import (
    ConstructPair,
    EducationLevel,
    RatingMatrix,
    RatingScale,
    RepertoryGrid,
    Requirement,
    Stakeholder,
    corated_items,
    mean_rating,
)
from .engine import (
    NeighborSet,
    Prediction,
    Recommendation,
    SimilarityScore,
    pearson_similarity,
    predict_rating,
    recommend,
    select_neighbors,
)
from .session import (
    FeedbackRecord,
    Session,
    SessionConfig,
    SessionState,
    get_recommendations,
    start_session,
    submit_feedback,
    submit_seed_ratings,
)

__version__ = "0.1.0"
