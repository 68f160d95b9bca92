"""The published near-normal rows and the decoded order-36 quadruple,
transcribed once and shared by the tests that pin them down."""

ROWS = (
    (34, "076417646512321462", "16738541372344337", (7, 7, -2, 6)),
    (34, "076535878535141762", "17677852174231455", (-5, 7, 0, 8)),
    (34, "076782178767646231", "17621532262576812", (-5, 3, 10, -2)),
    (34, "058214353712141461", "11868756376664254", (11, 3, -2, 2)),
    (34, "053765656464871261", "17765746348615187", (1, 1, -6, 10)),
    (36, "0764841234846532153", "165154775335162126", (3, -3, 8, 8)),
)

ROW36_RECORD = "nn 36 0764841234846532153 165154775335162126"

NN36_A = "+-++-+++-+-++--++--+" "++++----+++-----+"
NN36_B = "+++---+-----++--++--" "+-+--+-++-++-+-+-"
NN36_C = "++-+-+------++++++-+" "++-+++++---+++-+"
NN36_D = "+++++-+++--+++-+-+--" "+--+-++-+++-+--+"
