from .weights import ClassWeights, class_weights_from_labels, check_labels, N_CLASSES
from .forest import (
    RandomForestConfig,
    RandomForestModel,
    DecisionTree,
    train_random_forest,
    predict_forest,
    predicted_score,
)
from .linear_head import (
    LinearHeadConfig,
    LinearHeadModel,
    train_linear_head,
    predict_linear_head,
    linear_head_loss_and_grad,
    weighted_cross_entropy,
)
from .voting import majority_vote
from .embeddings import (
    Embedding,
    EmbeddingIndex,
    load_embeddings,
    baseline_encoder,
)
from .serialization import save_model, load_model
