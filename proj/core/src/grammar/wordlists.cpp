#include "formaltrip/grammar/vocabulary.hpp"

namespace formaltrip::grammar {

namespace {

constexpr std::string_view kVerbs[] = {
    "accept", "admire", "advise", "agree", "allow", "amuse", "annoy", "answer", "appear",
    "approve", "argue", "arrange", "arrive", "ask", "attach", "attack", "attend", "avoid",
    "bake", "balance", "bathe", "battle", "beg", "behave", "belong", "bless", "blink",
    "boast", "boil", "bolt", "book", "borrow", "bounce", "bow", "box", "brake", "breathe",
    "brush", "bump", "burn", "bury", "buzz", "calculate", "call", "camp", "care", "carry",
    "carve", "cause", "challenge", "change", "charge", "chase", "cheat", "check", "cheer",
    "chew", "choke", "chop", "clap", "clean", "clear", "climb", "clip", "close", "coach",
    "collect", "comb", "command", "compare", "complain", "complete", "concentrate",
    "confess", "connect", "consider", "contain", "continue", "copy", "correct", "cough",
    "count", "cover", "crack", "crash", "crawl", "cross", "crush", "cry", "cure", "curl",
    "cycle", "damage", "dance", "dare", "decay", "deceive", "decide", "decorate", "delay",
    "delight", "deliver", "depend", "describe", "desert", "deserve", "destroy", "detect",
    "develop", "disagree", "disappear", "discover", "dislike", "divide", "doubt", "drag",
    "drain", "dream", "dress", "drip", "drop", "drown", "dust", "earn", "educate",
    "embarrass", "employ", "empty", "encourage", "end", "enjoy", "enter", "entertain",
    "escape", "examine", "excite", "excuse", "exercise", "exist", "expand", "expect",
    "explain", "explode", "extend", "face", "fade", "fail", "fancy", "fasten", "fax",
    "fear", "fence", "fetch", "file", "fill", "film", "fire", "fit", "fix", "flap", "flash",
    "float", "flood", "flow", "flower", "fold", "follow", "fool", "force", "form", "found",
    "frame", "frighten", "fry", "gather", "gaze", "glow", "glue", "grab", "grate", "grease",
    "greet", "grin", "grip", "groan", "guarantee", "guard", "guess", "guide", "hammer",
    "hand", "handle", "hang", "happen", "harm", "hate", "haunt", "heal", "heap", "heat",
};

constexpr std::string_view kNames[] = {
    "Aaron", "Abigail", "Adam", "Adrian", "Agnes", "Alan", "Albert", "Alice", "Amara",
    "Amelia", "Amos", "Andrea", "Angela", "Anita", "Anton", "Arthur", "Astrid", "Audrey",
    "Barbara", "Basil", "Beatrice", "Benedict", "Bernard", "Bianca", "Boris", "Brenda",
    "Bruno", "Caleb", "Camila", "Carmen", "Casper", "Cecil", "Celia", "Chloe", "Clara",
    "Claude", "Colin", "Cora", "Cyril", "Daisy", "Damian", "Daniel", "Daphne", "Dario",
    "Deane", "Delia", "Dennis", "Diana", "Dmitri", "Dora", "Dorian", "Edgar", "Edith",
    "Edwin", "Elena", "Elias", "Eliza", "Elmer", "Emil", "Emma", "Enzo", "Esther", "Ethan",
    "Eva", "Fabian", "Felix", "Fiona", "Flora", "Floyd", "Frances", "Frida", "Gareth",
    "Gemma", "George", "Gerald", "Gilbert", "Gina", "Gloria", "Gordon", "Greta", "Gwen",
    "Hannah", "Harold", "Hazel", "Hector", "Helga", "Henry", "Hilda", "Hugo", "Ida", "Igor",
    "Imogen", "Irene", "Isaac", "Ivan", "Ivy", "Jacob", "Jasper", "Jean", "Joan", "Jonah",
    "Josef", "Judith", "Julia", "Julian", "Kai", "Karen", "Karl", "Katya", "Keith", "Kira",
    "Lara", "Laurel", "Leah", "Leon", "Lena", "Lewis", "Lila", "Linus", "Lola", "Lorna",
    "Lucas", "Lydia", "Mabel", "Magnus", "Maia", "Marco", "Margot", "Marta", "Martin",
    "Matilda", "Maya", "Milo", "Mina", "Miriam", "Nadia", "Naomi", "Nathan", "Neil", "Nell",
    "Nico", "Nina", "Noah", "Nora", "Olga", "Oliver", "Olive", "Omar", "Oscar", "Otto",
    "Pablo", "Paula", "Pearl", "Percy", "Petra", "Philip", "Phoebe", "Piers", "Quentin",
    "Rachel", "Ralph", "Rena", "Rhea", "Rita", "Robin", "Rosa", "Rufus", "Ruth", "Sabine",
    "Samuel", "Sara", "Selma", "Silas", "Simon", "Sofia", "Stella", "Stuart", "Tamara",
    "Tessa", "Theo", "Thea", "Tobias", "Ursula", "Valerie", "Vera", "Victor", "Viola",
    "Walter", "Wanda", "Wendy", "Wilbur", "Willa", "Xavier", "Yara", "Yusuf", "Zara",
    "Zelda", "Zoe", "Ada", "Ansel",
};

}  // namespace

std::span<const std::string_view> english_predicate_words() { return kVerbs; }
std::span<const std::string_view> english_person_names() { return kNames; }

}  // namespace formaltrip::grammar
