//! The n = 3 self-similarity as published, rows listed top down.

pub const KNOWN_N3: [&[&[usize]]; 36] = [
    &[&[23, 29, 32, 35], &[19, 28, 31, 34], &[18, 27, 30, 33], &[3, 6, 7, 15]],
    &[&[22, 29, 32, 35], &[18, 28, 31, 34], &[17, 27, 30, 33], &[2, 6, 7, 15]],
    &[&[23, 29, 32, 35], &[19, 28, 31, 34], &[18, 27, 30, 33], &[1, 5, 6, 13]],
    &[&[22, 29, 32, 35], &[18, 28, 31, 34], &[17, 27, 30, 33], &[0, 5, 6, 13]],
    &[&[19, 29, 32, 35], &[18, 28, 31, 34], &[17, 27, 30, 33], &[0, 5, 6, 13]],
    &[&[26, 32, 35], &[25, 31, 34], &[24, 30, 33], &[4, 6, 13]],
    &[&[26, 32, 35], &[25, 31, 34], &[21, 27, 30], &[3, 6, 13]],
    &[&[26, 32, 35], &[22, 28, 31], &[18, 27, 30], &[3, 6, 13]],
    &[&[22, 29, 32, 35], &[18, 28, 31, 34], &[17, 27, 30, 33], &[0, 5, 6, 7]],
    &[&[19, 29, 32, 35], &[18, 28, 31, 34], &[17, 27, 30, 33], &[0, 5, 6, 7]],
    &[&[26, 32, 35], &[25, 31, 34], &[24, 30, 33], &[4, 6, 7]],
    &[&[26, 32, 35], &[25, 31, 34], &[21, 27, 30], &[3, 6, 7]],
    &[&[25, 32, 35], &[24, 31, 34], &[20, 27, 30], &[2, 6, 7]],
    &[&[26, 32, 35], &[22, 28, 31], &[18, 27, 30], &[3, 6, 7]],
    &[&[25, 32, 35], &[21, 28, 31], &[17, 27, 30], &[2, 6, 7]],
    &[&[23, 29, 32], &[19, 28, 31], &[18, 27, 30], &[3, 6, 7]],
    &[&[22, 29, 32], &[18, 28, 31], &[17, 27, 30], &[2, 6, 7]],
    &[&[22, 29, 32, 35], &[18, 28, 31, 34], &[17, 27, 30, 33], &[8, 12, 14, 16]],
    &[&[22, 28, 32, 35], &[18, 27, 31, 34], &[3, 11, 14, 16]],
    &[&[22, 28, 31, 35], &[18, 27, 30, 34], &[3, 6, 13, 16]],
    &[&[19, 29, 32, 35], &[18, 28, 31, 34], &[8, 12, 14, 16]],
    &[&[19, 28, 32, 35], &[18, 27, 31, 34], &[3, 11, 14, 16]],
    &[&[19, 28, 31, 35], &[18, 27, 30, 34], &[3, 6, 13, 16]],
    &[&[19, 28, 31, 34], &[18, 27, 30, 33], &[3, 6, 7, 15]],
    &[&[19, 28, 32, 35], &[18, 27, 31, 34], &[1, 10, 12, 14]],
    &[&[19, 28, 31, 35], &[18, 27, 30, 34], &[1, 5, 11, 14]],
    &[&[19, 28, 31, 34], &[18, 27, 30, 33], &[1, 5, 6, 13]],
    &[&[25, 32, 35], &[24, 31, 34], &[9, 12, 14]],
    &[&[25, 31, 35], &[24, 30, 34], &[4, 11, 14]],
    &[&[25, 31, 34], &[24, 30, 33], &[4, 6, 13]],
    &[&[25, 32, 35], &[21, 28, 31], &[8, 12, 14]],
    &[&[25, 31, 35], &[21, 27, 31], &[3, 11, 14]],
    &[&[25, 31, 34], &[21, 27, 30], &[3, 6, 13]],
    &[&[22, 29, 32], &[18, 28, 31], &[8, 12, 14]],
    &[&[22, 28, 32], &[18, 27, 31], &[3, 11, 14]],
    &[&[22, 28, 31], &[18, 27, 30], &[3, 6, 13]],
];
