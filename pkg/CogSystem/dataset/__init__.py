from CogSystem.dataset.opinions import (
    EXPECTED_OPINIONS,
    generate_category,
    generate_opinion_set,
    load_opinion_set,
    save_opinion_set,
)
from CogSystem.dataset.supporters import SupporterRank, normalize_supporter, rank_supporters
from CogSystem.dataset.profiles import MIN_PROFILE_KEYS, generate_profile
from CogSystem.dataset.review import (
    REVIEW_FLAGS,
    ReviewEntry,
    ReviewSheet,
    export_review_sheet,
    import_review_sheet,
    questionnaire_record,
    read_review_sheet,
    topic_slug,
)
